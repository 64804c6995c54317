package fixture.cf;

public interface Named {
    String name();
}
