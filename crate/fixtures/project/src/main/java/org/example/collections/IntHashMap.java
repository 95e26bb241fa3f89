package org.example.collections;

/**
 * A hash map with primitive int keys.
 */
public class IntHashMap {

    private Entry[] table;

    private int count;

    private float loadFactor;

    /**
     * Constructs a new, empty hashtable with the specified initial
     * capacity and the specified load factor.
     *
     * @param initialCapacity the initial capacity of the hashtable, must not be negative.
     * @param loadFactor the load factor of the hashtable.
     * @throws IllegalArgumentException if the load factor is nonpositive.
     */
    public IntHashMap(int initialCapacity, float loadFactor) {
        super();
        if (initialCapacity < 0) {
            throw new IllegalArgumentException("Illegal Capacity: " + initialCapacity);
        }
        if (loadFactor <= 0) {
            throw new IllegalArgumentException("Illegal Load: " + loadFactor);
        }
        this.loadFactor = loadFactor;
        this.table = new Entry[initialCapacity == 0 ? 1 : initialCapacity];
    }

    /**
     * @return the number of keys in this hashtable.
     */
    public int size() {
        return count;
    }

    /**
     * Tests if this hashtable maps no keys to values.
     *
     * @return true if this hashtable maps no keys to values; false otherwise.
     */
    public boolean isEmpty() {
        return count == 0;
    }

    /**
     * Returns the value to which the key is mapped in this map.
     *
     * @param key a key in the hashtable.
     * @return the value to which the key is mapped, or -1 if the key is not mapped.
     */
    public int get(int key) {
        for (Entry e = table[(key & 0x7FFFFFFF) % table.length]; e != null; e = e.next) {
            if (e.key == key) {
                return e.value;
            }
        }
        return -1;
    }

    /**
     * Tests if the specified key is a key in this hashtable.
     *
     * @param key possible key.
     * @return true if the key is in this hashtable, that is if get returns a value other than -1.
     */
    public boolean containsKey(int key) {
        return get(key) != -1;
    }

    /**
     * Computes a table capacity able to hold the given number of entries.
     *
     * @param expectedSize the number of entries to hold.
     * @return a capacity strictly greater than expectedSize.
     * @throws IllegalArgumentException if expectedSize is negative.
     */
    public static int capacityFor(int expectedSize) {
        if (expectedSize < 0) {
            throw new IllegalArgumentException();
        }
        return expectedSize + 1 + expectedSize / 3;
    }

    private static class Entry {
        int key;
        int value;
        Entry next;
    }
}
