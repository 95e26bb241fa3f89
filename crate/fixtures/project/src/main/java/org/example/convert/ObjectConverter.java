package org.example.convert;

import java.util.List;

public class ObjectConverter {

    /**
     * Converts an object to its text form.
     *
     * @param object the object to convert, must not be null
     * @return the converted text, never null
     */
    public String convert(Object object) {
        return object.toString();
    }

    /**
     * @param object the candidate object
     * @return true if the object is Convertible
     */
    public boolean canConvert(Object object) {
        return object instanceof Convertible;
    }

    /**
     * Converts every object of a list and joins the results.
     *
     * @param objects the objects, none of which may be null
     * @return the joined text
     * @throws IllegalArgumentException if objects is empty
     */
    public String convertAll(List<Object> objects) {
        StringBuilder sb = new StringBuilder();
        for (Object o : objects) {
            sb.append(convert(o));
        }
        return sb.toString();
    }

    /**
     * Chooses the value used for absent keys.
     *
     * @param defaultValue the value provided for inputs absent in map keys
     */
    public void setDefault(Object defaultValue) {
    }
}
