package org.example.chart;

import static org.junit.Assert.assertTrue;

import org.junit.Test;

public class RendererTest {

    @Test
    public void storesGenerator() {
        AbstractCategoryItemRenderer renderer = new StubRenderer();
        int s = 2;
        CategoryItemLabelGenerator g = null;
        renderer.setSeriesItemLabelGenerator(s, g);
        assertTrue(renderer.getSeriesItemLabelGenerator(s) == null);
    }

    @Test
    public void shiftedSeries() {
        AbstractCategoryItemRenderer renderer = new StubRenderer();
        renderer.setSeriesItemLabelGenerator(renderer.getPassCount() - 1, null);
    }
}
