package fixture.cf;

public class Point {
    public int x;
    public int y;
    public static Point ORIGIN = new Point();
}
