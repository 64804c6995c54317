package fixture.cf;

public class Outer {
    public static class Inner {
        public java.util.List items = new java.util.LinkedList();
    }

    public Inner make() {
        return new Inner();
    }
}
