package org.apache.commons.beanutils;

public class PropertyUtils {
    public static Object getProperty(Object bean, String name) {
        return ((java.util.Map) bean).get(name);
    }
}
