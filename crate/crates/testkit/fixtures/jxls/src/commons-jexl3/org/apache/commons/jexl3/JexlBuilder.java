package org.apache.commons.jexl3;

public class JexlBuilder {
    public Object create() {
        return this;
    }
}
