package org.example.iterators;

import java.util.Iterator;

/**
 * Implements a ListIterator over an array.
 */
public class ArrayListIterator implements Iterator<Object> {

    private final Object array;

    private int startIndex;

    private int index;

    /**
     * Constructs an ArrayListIterator that will iterate over the values in the
     * specified array.
     *
     * @param array the array to iterate over
     * @throws IllegalArgumentException if <code>array</code> is not an array.
     * @throws NullPointerException if <code>array</code> is <code>null</code>
     */
    public ArrayListIterator(final Object array) {
        if (array == null) {
            throw new NullPointerException();
        }
        if (!array.getClass().isArray()) {
            throw new IllegalArgumentException("Argument is not an array");
        }
        this.array = array;
    }

    /**
     * @return the start index, never negative
     */
    public int getStartIndex() {
        return startIndex;
    }

    public boolean hasNext() {
        return index < java.lang.reflect.Array.getLength(array);
    }

    public Object next() {
        return java.lang.reflect.Array.get(array, index++);
    }

    public void remove() {
        throw new UnsupportedOperationException();
    }
}
