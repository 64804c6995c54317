package fixture.cf;

public class Registry {
    public static final String DEFAULT = "fixture.cf.Circle";

    public Object load() throws Exception {
        Class.forName("com.example.plugins.Plugin");
        Class.forName(DEFAULT);
        String text = "not a class name";
        String single = "Circle";
        String trailing = "org.example.";
        return text + single + trailing + "java.util.ArrayList";
    }
}
