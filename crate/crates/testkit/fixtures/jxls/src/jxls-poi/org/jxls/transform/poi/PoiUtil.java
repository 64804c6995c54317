package org.jxls.transform.poi;

import org.apache.poi.ss.usermodel.Cell;

public class PoiUtil {
    public static String cellValue(Cell cell) {
        return cell.getStringValue();
    }
}
