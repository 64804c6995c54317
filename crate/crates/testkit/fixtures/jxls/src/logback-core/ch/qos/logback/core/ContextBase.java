package ch.qos.logback.core;

public class ContextBase {
    private String name = "default";
}
