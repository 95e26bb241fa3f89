package org.example.chart;

/**
 * Creates labels for the items in a category dataset.
 */
public interface CategoryItemLabelGenerator {

    /**
     * Generates the label for one item.
     *
     * @param row  the row index (zero based).
     * @param column  the column index (zero based).
     *
     * @return The label (possibly null).
     */
    String generateLabel(int row, int column);
}
