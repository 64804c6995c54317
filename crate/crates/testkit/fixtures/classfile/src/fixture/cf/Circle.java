package fixture.cf;

public class Circle extends AbstractShape implements Named, java.io.Serializable {
    public static final long SERIAL = 42L;
    public static final double PI_ISH = 3.14159;
    public static final float HALF = 0.5f;
    private double radius;

    public Circle(double radius) {
        this.radius = radius;
        this.label = "circle";
    }

    public double area() {
        return Math.PI * radius * radius;
    }

    public String name() {
        return String.valueOf(radius);
    }
}
