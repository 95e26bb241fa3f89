package org.example.primitives;

import java.util.Arrays;

/**
 * Static utility methods pertaining to {@code short} primitives.
 */
public final class Shorts {

    public static final short MAX_VALUE = Short.MAX_VALUE;

    public static final short MIN_VALUE = Short.MIN_VALUE;

    private Shorts() {}

    /**
     * Returns {@code true} if {@code target} is present as an element anywhere in {@code array}.
     *
     * @param array an array of {@code short} values, possibly empty
     * @param target a primitive {@code short} value
     * @return {@code true} when any element {@code array[i]} equals {@code target}
     */
    public static boolean contains(short[] array, short target) {
        for (short value : array) {
            if (value == target) {
                return true;
            }
        }
        return false;
    }

    /**
     * Returns the index of the first appearance of the value {@code target} in {@code array}.
     *
     * @param array an array of {@code short} values, possibly empty
     * @param target a primitive {@code short} value
     * @return the least index {@code i} for which {@code array[i] == target}, or {@code -1} if no
     *     such index exists.
     */
    public static int indexOf(short[] array, short target) {
        for (int i = 0; i < array.length; i++) {
            if (array[i] == target) {
                return i;
            }
        }
        return -1;
    }

    /**
     * Returns the greatest value present in {@code array}.
     *
     * @param array a <i>nonempty</i> array of {@code short} values
     * @return the value present in {@code array} that is greater than or equal to every other value
     * @throws IllegalArgumentException if {@code array} is empty
     */
    public static short max(short... array) {
        short max = array[0];
        for (int i = 1; i < array.length; i++) {
            if (array[i] > max) {
                max = array[i];
            }
        }
        return max;
    }

    /**
     * Compares the two specified {@code short} values.
     *
     * @param a the first {@code short} to compare
     * @param b the second {@code short} to compare
     * @return a negative value if {@code a} is less than {@code b}; a positive value if {@code a} is
     *     greater than {@code b}; or zero if they are equal
     */
    public static int compare(short a, short b) {
        return a - b;
    }

    /**
     * Returns the {@code short} value that is equal to {@code value}, if possible.
     *
     * @param value any value in the range of the {@code short} type
     * @return the {@code short} value that equals {@code value}
     * @throws IllegalArgumentException if {@code value} is greater than {@link Shorts#MAX_VALUE} or
     *     less than {@link Shorts#MIN_VALUE}
     */
    public static short checkedCast(long value) {
        short result = (short) value;
        if (result != value) {
            throw new IllegalArgumentException("Out of range: " + value);
        }
        return result;
    }
}
