package fixture.cf;

public interface Shape {
    double area();
}
