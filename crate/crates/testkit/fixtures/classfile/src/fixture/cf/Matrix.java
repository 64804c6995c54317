package fixture.cf;

public class Matrix {
    private double[][] values;
    private Circle[] circles;
    private String[][][] grid;

    public Shape[] toShapes(int[][] sizes, java.math.BigDecimal[] scale) {
        return new Shape[sizes.length];
    }

    public Object[] boxes() {
        return new java.awt.Rectangle[2][3];
    }
}
