package org.example.chart;

import java.util.List;

public abstract class AbstractCategoryItemRenderer {

    private List<CategoryItemLabelGenerator> generators;

    private int passCount = 1;

    private double itemMargin;

    /**
     * Sets the item label generator for a series and sends a
     * change event to all registered listeners.
     *
     * @param series  the series index (zero based).
     * @param generator  the generator (null permitted).
     */
    public void setSeriesItemLabelGenerator(int series, CategoryItemLabelGenerator generator) {
        this.generators.set(series, generator);
    }

    /**
     * Returns the item label generator for a series.
     *
     * @param series  the series index (zero based).
     *
     * @return The generator (possibly null).
     */
    public CategoryItemLabelGenerator getSeriesItemLabelGenerator(int series) {
        return this.generators.get(series);
    }

    /**
     * Returns the number of passes through the dataset required by the
     * renderer.
     *
     * @return The pass count, always 1 or more.
     */
    public int getPassCount() {
        return this.passCount;
    }

    /**
     * Sets the item margin.
     *
     * @param margin  the margin, as a percentage of the category width,
     *     between 0.0 and 1.0.
     */
    public void setItemMargin(double margin) {
        this.itemMargin = margin;
    }
}
