package fixture.cf;

@Marker("type")
@Hidden
public class Annotated {
    @Marker("field")
    public java.util.Map<String, Integer> counts;

    @Deprecated
    @Marker
    public void touch(@Hidden java.net.URI target, @Marker("p") java.util.UUID id) {
    }
}
