package org.example.codec;

/**
 * Thrown when a decoder meets malformed input.
 */
public class DecoderException extends Exception {

    public DecoderException(String message) {
        super(message);
    }
}
