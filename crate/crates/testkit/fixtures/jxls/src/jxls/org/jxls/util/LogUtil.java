package org.jxls.util;

import org.slf4j.LoggerFactory;

public class LogUtil {
    public static Object logger(String name) {
        return LoggerFactory.getLogger(name);
    }
}
