package fixture.cf;

import java.lang.annotation.Retention;
import java.lang.annotation.RetentionPolicy;

@Retention(RetentionPolicy.RUNTIME)
public @interface Policy {
    Class handler() default java.util.Random.class;
}
