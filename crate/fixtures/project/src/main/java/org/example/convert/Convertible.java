package org.example.convert;

/**
 * Marks objects that know their own string form.
 */
public interface Convertible {

    String asText();
}
