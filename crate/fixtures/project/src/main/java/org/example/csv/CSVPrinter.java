package org.example.csv;

import java.io.IOException;
import java.sql.ResultSet;
import java.sql.SQLException;

/**
 * Prints values in a CSV format.
 */
public final class CSVPrinter {

    private long recordCount;

    /**
     * Prints headers for a result set based on its metadata.
     *
     * @param resultSet The ResultSet to query for metadata.
     * @throws IOException If an I/O error occurs.
     * @throws SQLException If a database access error occurs or this method is called on a closed result set.
     */
    public synchronized void printHeaders(final ResultSet resultSet) throws IOException, SQLException {
        resultSet.getMetaData();
    }

    /**
     * Prints the given values as a single record.
     *
     * @param values values to output.
     * @throws NullPointerException if values is null.
     */
    public void printRecords(final Object[] values) {
        recordCount += values.length;
    }

    /**
     * @return the number of records printed so far, 0 or more.
     */
    public long getRecordCount() {
        return recordCount;
    }
}
