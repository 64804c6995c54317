package org.apache.commons.logging;

public interface Log {
    void debug(Object message);
}
