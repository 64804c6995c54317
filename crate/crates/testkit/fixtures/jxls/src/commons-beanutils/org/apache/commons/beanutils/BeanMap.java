package org.apache.commons.beanutils;

import org.apache.commons.collections.FastHashMap;

public class BeanMap {
    private FastHashMap cache = new FastHashMap();
}
