package org.apache.poi.util;

import org.apache.commons.codec.binary.Base64;

public class Base64Codec {
    public static byte[] encode(byte[] data) {
        return Base64.encodeBase64(data);
    }
}
