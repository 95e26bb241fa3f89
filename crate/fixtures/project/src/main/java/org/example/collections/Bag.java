package org.example.collections;

import java.util.ArrayList;
import java.util.Collection;
import java.util.Iterator;
import java.util.List;

/**
 * An unordered collection that counts duplicates.
 *
 * @param <E> the element type
 */
public class Bag<E> implements Iterable<E> {

    private final List<E> items = new ArrayList<>();

    public Iterator<E> iterator() {
        return items.iterator();
    }

    /**
     * @return the number of elements in the bag
     */
    public int size() {
        return items.size();
    }

    /**
     * @param element the element to look for
     * @return true if the bag holds at least one copy of element
     */
    public boolean contains(Object element) {
        return items.contains(element);
    }

    /**
     * Returns the element at a position of the iteration order.
     *
     * @param index the index, non-negative and less than the size
     * @return the element
     * @throws IndexOutOfBoundsException if index is out of range
     */
    public E get(int index) {
        return items.get(index);
    }

    /**
     * Adds one copy of an element.
     *
     * @param element the element to add, must not be null
     * @throws NullPointerException if element is null
     */
    public void add(E element) {
        if (element == null) {
            throw new NullPointerException();
        }
        items.add(element);
    }

    /**
     * @return true if the iterator of this bag has a next element
     */
    public boolean hasElements() {
        return iterator().hasNext();
    }

    /**
     * Counts the copies of an element.
     *
     * @param element the element to count
     * @return the number of copies, never negative
     */
    public int count(Object element) {
        int n = 0;
        for (E e : items) {
            if (e.equals(element)) {
                n++;
            }
        }
        return n;
    }

    /**
     * @param others the elements to look for, not null
     * @return true if every element of others is in this bag
     */
    public boolean containsAll(Collection<?> others) {
        for (Object o : others) {
            if (!contains(o)) {
                return false;
            }
        }
        return true;
    }
}
