package org.apache.commons.collections;

public class FastHashMap extends java.util.HashMap {
}
