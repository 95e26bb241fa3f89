package org.example.codec;

import java.math.BigInteger;

/**
 * Provides Base64 encoding and decoding.
 */
public class Base64 {

    static final int CHUNK_SIZE = 76;

    /**
     * Encodes to a byte64-encoded integer according to crypto standards such as W3C's XML-Signature.
     *
     * @param bigInteger a BigInteger
     * @return A byte array containing base64 character data
     * @throws NullPointerException if null is passed in
     */
    public static byte[] encodeInteger(final BigInteger bigInteger) {
        if (bigInteger == null) {
            throw new NullPointerException("encodeInteger called with null parameter");
        }
        return encodeBase64(bigInteger.toByteArray(), false);
    }

    /**
     * Encodes binary data using the base64 algorithm, optionally chunking the output into 76 character blocks.
     *
     * @param binaryData Array containing binary data to encode, must not be null.
     * @param isChunked if true this encoder will chunk the base64 output into 76 character blocks
     * @return Base64-encoded data, at least as long as the input
     */
    public static byte[] encodeBase64(byte[] binaryData, boolean isChunked) {
        return binaryData;
    }

    /**
     * Returns whether or not the octet is in the base 64 alphabet.
     *
     * @param octet The value to test
     * @return true if the value is defined in the base 64 alphabet, false otherwise.
     */
    public static boolean isBase64(byte octet) {
        return octet == '=' || octet >= 'A' && octet <= 'Z';
    }
}
