package org.example.text;

/**
 * Operations on Strings that are null safe.
 */
public class StrUtils {

    /**
     * Counts how many times the char appears in the given string.
     *
     * @param str the String to check, may be null
     * @param ch the char to count
     * @return the number of occurrences, 0 if the String is null
     */
    public static int countMatches(String str, char ch) {
        if (str == null) {
            return 0;
        }
        int count = 0;
        for (int i = 0; i < str.length(); i++) {
            if (ch == str.charAt(i)) {
                count++;
            }
        }
        return count;
    }

    /**
     * Abbreviates a String using ellipses.
     *
     * @param str the String to check, may be null
     * @param maxWidth maximum length of result String, must be at least 4
     * @return abbreviated String, null if null String input
     * @throws IllegalArgumentException if maxWidth is less than 4
     */
    public static String abbreviate(String str, int maxWidth) {
        if (maxWidth < 4) {
            throw new IllegalArgumentException("Minimum abbreviation width is 4");
        }
        if (str == null || str.length() <= maxWidth) {
            return str;
        }
        return str.substring(0, maxWidth - 3) + "...";
    }

    /**
     * Checks if a CharSequence is empty ("") or null.
     *
     * @param cs the CharSequence to check, may be null
     * @return true if the CharSequence is empty or null
     */
    public static boolean isEmpty(CharSequence cs) {
        return cs == null || cs.length() == 0;
    }

    /**
     * Repeats a String count times to form a new String.
     *
     * @param str the String to repeat, may be null
     * @param count number of times to repeat str
     * @return a new String consisting of the original String repeated, null if null String input
     */
    public static String repeat(String str, int count) {
        if (str == null) {
            return null;
        }
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < count; i++) {
            sb.append(str);
        }
        return sb.toString();
    }

    /**
     * Finds the first index within a String.
     *
     * @param seq the String to check, may be null
     * @param searchSeq the String to find, may be null
     * @return the first index of the search String, -1 if no match or null string input
     */
    public static int indexOf(String seq, String searchSeq) {
        if (seq == null || searchSeq == null) {
            return -1;
        }
        return seq.indexOf(searchSeq);
    }
}
