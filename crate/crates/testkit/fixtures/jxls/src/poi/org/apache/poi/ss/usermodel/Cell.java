package org.apache.poi.ss.usermodel;

public class Cell {
    public String getStringValue() {
        return "";
    }
}
