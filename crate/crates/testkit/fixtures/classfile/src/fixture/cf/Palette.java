package fixture.cf;

public class Palette implements Runnable, Comparable {
    private java.util.Set colors = new java.util.TreeSet();

    public void run() {
        Named n = new Circle(1.0);
        n.name();
        colors.add(n);
    }

    public int compareTo(Object other) {
        return 0;
    }
}
