package org.apache.commons.logging.impl;

import org.slf4j.LoggerFactory;

public class SLF4JLogFactory {
    public static Object getLog(String name) {
        return LoggerFactory.getLogger(name);
    }
}
