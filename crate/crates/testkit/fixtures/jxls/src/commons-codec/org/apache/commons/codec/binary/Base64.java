package org.apache.commons.codec.binary;

public class Base64 {
    public static byte[] encodeBase64(byte[] data) {
        return data;
    }
}
