package org.jxls.common;

import org.apache.commons.beanutils.PropertyUtils;

public class Context {
    private java.util.Map vars = new java.util.HashMap();

    public Object getVar(String name) {
        return PropertyUtils.getProperty(vars, name);
    }
}
