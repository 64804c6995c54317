package org.jxls.transform.poi;

import org.apache.commons.logging.impl.SLF4JLogFactory;
import org.apache.poi.ss.usermodel.Workbook;
import org.jxls.common.Context;
import org.jxls.transform.AbstractTransformer;

public class PoiTransformer extends AbstractTransformer {
    private Workbook workbook;

    public PoiTransformer(Workbook workbook) {
        this.workbook = workbook;
    }

    public static PoiTransformer createTransformer() {
        SLF4JLogFactory.getLog("poi");
        return new PoiTransformer(Workbook.create());
    }

    public Object read(Context context, String name) {
        return context.getVar(name);
    }
}
