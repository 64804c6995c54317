import java.lang.classfile.Annotation;
import java.lang.classfile.AnnotationElement;
import java.lang.classfile.AnnotationValue;
import java.lang.classfile.Attribute;
import java.lang.classfile.ClassFile;
import java.lang.classfile.ClassModel;
import java.lang.classfile.FieldModel;
import java.lang.classfile.MethodModel;
import java.lang.classfile.attribute.AnnotationDefaultAttribute;
import java.lang.classfile.attribute.RuntimeInvisibleAnnotationsAttribute;
import java.lang.classfile.attribute.RuntimeInvisibleParameterAnnotationsAttribute;
import java.lang.classfile.attribute.RuntimeVisibleAnnotationsAttribute;
import java.lang.classfile.attribute.RuntimeVisibleParameterAnnotationsAttribute;
import java.lang.classfile.attribute.SignatureAttribute;
import java.lang.classfile.constantpool.ClassEntry;
import java.lang.classfile.constantpool.MethodTypeEntry;
import java.lang.classfile.constantpool.NameAndTypeEntry;
import java.lang.classfile.constantpool.PoolEntry;
import java.lang.classfile.constantpool.StringEntry;
import java.nio.file.Files;
import java.nio.file.Paths;
import java.util.Iterator;
import java.util.List;
import java.util.TreeSet;

// Independent constant-pool dump built on the platform class-file API.
// Prints "class", "ref", "string", "field" and "method" lines for one class file.
public class PoolDump {
    private static TreeSet refs = new TreeSet();

    public static void main(String[] args) throws Exception {
        ClassFile cf = (ClassFile) Class.forName("java.lang.classfile.ClassFile")
            .getMethod("of", new Class[0]).invoke(null, new Object[0]);
        ClassModel cm = cf.parse(Files.readAllBytes(Paths.get(args[0])));
        String self = cm.thisClass().asInternalName().replace('/', '.');
        TreeSet strings = new TreeSet();
        TreeSet members = new TreeSet();

        for (Iterator it = cm.constantPool().iterator(); it.hasNext();) {
            PoolEntry e = (PoolEntry) it.next();
            if (e instanceof ClassEntry) {
                String n = ((ClassEntry) e).asInternalName();
                if (n.startsWith("[")) {
                    descriptor(n);
                } else {
                    refs.add(n.replace('/', '.'));
                }
            } else if (e instanceof NameAndTypeEntry) {
                descriptor(((NameAndTypeEntry) e).type().stringValue());
            } else if (e instanceof MethodTypeEntry) {
                descriptor(((MethodTypeEntry) e).descriptor().stringValue());
            } else if (e instanceof StringEntry) {
                strings.add(((StringEntry) e).stringValue());
            }
        }
        attributes(cm.attributes());
        for (Iterator it = cm.fields().iterator(); it.hasNext();) {
            FieldModel f = (FieldModel) it.next();
            descriptor(f.fieldType().stringValue());
            members.add("field " + f.fieldName().stringValue() + " " + f.fieldType().stringValue());
            attributes(f.attributes());
        }
        for (Iterator it = cm.methods().iterator(); it.hasNext();) {
            MethodModel m = (MethodModel) it.next();
            descriptor(m.methodType().stringValue());
            members.add("method " + m.methodName().stringValue() + " " + m.methodType().stringValue());
            attributes(m.attributes());
        }
        refs.remove(self);

        System.out.println("class " + self);
        for (Iterator it = refs.iterator(); it.hasNext();) {
            System.out.println("ref " + it.next());
        }
        for (Iterator it = strings.iterator(); it.hasNext();) {
            System.out.println("string " + ((String) it.next()).replace("\n", "\\n"));
        }
        for (Iterator it = members.iterator(); it.hasNext();) {
            System.out.println(it.next());
        }
    }

    private static void attributes(List attrs) {
        for (Iterator it = attrs.iterator(); it.hasNext();) {
            Attribute a = (Attribute) it.next();
            if (a instanceof RuntimeVisibleAnnotationsAttribute) {
                annotations(((RuntimeVisibleAnnotationsAttribute) a).annotations());
            } else if (a instanceof RuntimeInvisibleAnnotationsAttribute) {
                annotations(((RuntimeInvisibleAnnotationsAttribute) a).annotations());
            } else if (a instanceof RuntimeVisibleParameterAnnotationsAttribute) {
                parameterAnnotations(((RuntimeVisibleParameterAnnotationsAttribute) a).parameterAnnotations());
            } else if (a instanceof RuntimeInvisibleParameterAnnotationsAttribute) {
                parameterAnnotations(((RuntimeInvisibleParameterAnnotationsAttribute) a).parameterAnnotations());
            } else if (a instanceof AnnotationDefaultAttribute) {
                value(((AnnotationDefaultAttribute) a).defaultValue());
            } else if (a instanceof SignatureAttribute) {
                descriptor(((SignatureAttribute) a).signature().stringValue());
            }
        }
    }

    private static void parameterAnnotations(List perParam) {
        for (Iterator it = perParam.iterator(); it.hasNext();) {
            annotations((List) it.next());
        }
    }

    private static void annotations(List anns) {
        for (Iterator it = anns.iterator(); it.hasNext();) {
            annotation((Annotation) it.next());
        }
    }

    private static void annotation(Annotation ann) {
        descriptor(ann.className().stringValue());
        for (Iterator it = ann.elements().iterator(); it.hasNext();) {
            value(((AnnotationElement) it.next()).value());
        }
    }

    private static void value(AnnotationValue v) {
        if (v instanceof AnnotationValue.OfEnum) {
            descriptor(((AnnotationValue.OfEnum) v).className().stringValue());
        } else if (v instanceof AnnotationValue.OfClass) {
            descriptor(((AnnotationValue.OfClass) v).className().stringValue());
        } else if (v instanceof AnnotationValue.OfAnnotation) {
            annotation(((AnnotationValue.OfAnnotation) v).annotation());
        } else if (v instanceof AnnotationValue.OfArray) {
            for (Iterator it = ((AnnotationValue.OfArray) v).values().iterator(); it.hasNext();) {
                value((AnnotationValue) it.next());
            }
        }
    }

    // Collects every L<name>; class type; type variables (T<name>;) are skipped.
    private static void descriptor(String d) {
        int i = 0;
        while (i < d.length()) {
            char c = d.charAt(i);
            if (c == 'L') {
                int j = i + 1;
                while (j < d.length() && d.charAt(j) != ';' && d.charAt(j) != '<') {
                    j++;
                }
                refs.add(d.substring(i + 1, j).replace('/', '.'));
                i = j;
            } else if (c == 'T') {
                i = d.indexOf(';', i) + 1;
            } else if (c == '.') {
                // inner type suffix of a generic signature
                int j = i + 1;
                while (j < d.length() && d.charAt(j) != ';' && d.charAt(j) != '<') {
                    j++;
                }
                i = j;
            } else {
                i++;
            }
        }
    }
}
