package org.apache.commons.collections4.map;

public class HashedMap {
    public static HashedMap make() {
        return new HashedMap();
    }
}
