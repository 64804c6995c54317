package fixture.cf;

public abstract class AbstractShape implements Shape {
    protected String label;

    public String describe() {
        return label + ":" + area();
    }
}
