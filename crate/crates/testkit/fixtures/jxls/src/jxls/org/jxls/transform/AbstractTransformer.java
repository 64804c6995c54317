package org.jxls.transform;

import ch.qos.logback.core.ContextBase;

public abstract class AbstractTransformer {
    protected ContextBase loggingContext = new ContextBase();
}
