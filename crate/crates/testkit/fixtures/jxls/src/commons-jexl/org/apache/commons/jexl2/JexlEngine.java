package org.apache.commons.jexl2;

import org.apache.commons.logging.Log;
import org.apache.commons.logging.LogFactory;

public class JexlEngine {
    private final Log log = LogFactory.getLog(JexlEngine.class);

    public Object evaluate(String expression) {
        log.debug(expression);
        return null;
    }
}
