package fixture.cf;

import java.io.IOException;

public class Errors {
    public void check(Shape shape) throws ShapeException, IOException {
        try {
            if (shape.area() < 0) {
                throw new ShapeException("negative");
            }
        } catch (IllegalStateException e) {
            throw new java.io.UncheckedIOException(new IOException(e));
        }
    }
}
