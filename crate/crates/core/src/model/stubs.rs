//! Built-in platform classes, written as Java declarations and parsed with
//! the same declaration parser as project sources. Type variables erase to
//! `Object`.

pub(crate) const PLATFORM_UNITS: &[(&str, &str)] = &[
    ("<platform>/java/lang", JAVA_LANG),
    ("<platform>/java/util", JAVA_UTIL),
    ("<platform>/java/util/stream", JAVA_UTIL_STREAM),
];

const JAVA_LANG: &str = r#"
package java.lang;

public class Object {
    public boolean equals(Object arg0);
    public String toString();
    public final native Class getClass();
    public native int hashCode();
}

public interface CharSequence {
    int length();
    char charAt(int index);
    boolean isEmpty();
}

public interface Comparable<T> {
    int compareTo(T o);
}

public final class String implements CharSequence, Comparable<String> {
    public int length();
    public boolean isEmpty();
    public char charAt(int index);
    public boolean contains(CharSequence s);
    public boolean startsWith(String prefix);
    public boolean endsWith(String suffix);
    public int indexOf(String str);
    public boolean equalsIgnoreCase(String anotherString);
    public String trim();
    public String toLowerCase();
    public String toUpperCase();
    public String substring(int beginIndex);
    public char[] toCharArray();
    public byte[] getBytes();
    public int compareTo(String anotherString);
}

public final class Class<T> {
    public String getName();
    public String getSimpleName();
    public native boolean isArray();
    public Object getClassData();
    public ClassLoader getClassLoader();
    public native boolean isInterface();
    public native boolean isPrimitive();
    public native boolean isInstance(Object obj);
    public native Class getComponentType();
    public native Class getSuperclass();
}

public abstract class ClassLoader {
    public ClassLoader getParent();
    public String getName();
}

public interface Iterable<T> {
    java.util.Iterator<T> iterator();
}

public abstract class Number {
    public abstract int intValue();
    public abstract long longValue();
    public abstract float floatValue();
    public abstract double doubleValue();
}

public final class Integer extends Number implements Comparable<Integer> {
    public static final int MAX_VALUE = 0x7fffffff;
    public static final int MIN_VALUE = 0x80000000;
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Long extends Number implements Comparable<Long> {
    public static final long MAX_VALUE = 0x7fffffffffffffffL;
    public static final long MIN_VALUE = 0x8000000000000000L;
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Short extends Number implements Comparable<Short> {
    public static final short MAX_VALUE = 32767;
    public static final short MIN_VALUE = -32768;
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Byte extends Number implements Comparable<Byte> {
    public static final byte MAX_VALUE = 127;
    public static final byte MIN_VALUE = -128;
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Float extends Number implements Comparable<Float> {
    public static final float MAX_VALUE = 0x1.fffffeP+127f;
    public static final float MIN_VALUE = 0x0.000002P-126f;
    public boolean isNaN();
    public boolean isInfinite();
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Double extends Number implements Comparable<Double> {
    public static final double MAX_VALUE = 0x1.fffffffffffffP+1023;
    public static final double MIN_VALUE = 0x0.0000000000001P-1022;
    public boolean isNaN();
    public boolean isInfinite();
    public int intValue();
    public long longValue();
    public float floatValue();
    public double doubleValue();
}

public final class Boolean implements Comparable<Boolean> {
    public boolean booleanValue();
}

public final class Character implements Comparable<Character> {
    public char charValue();
}
"#;

const JAVA_UTIL: &str = r#"
package java.util;

import java.util.stream.Stream;

public interface Iterator<E> {
    boolean hasNext();
    E next();
    void remove();
}

public interface Collection<E> extends Iterable<E> {
    int size();
    boolean isEmpty();
    boolean contains(Object o);
    Stream<E> stream();
}

public interface List<E> extends Collection<E> {
    E get(int index);
    int indexOf(Object o);
}

public interface Set<E> extends Collection<E> {
}

public interface Map<K, V> {
    int size();
    boolean isEmpty();
    boolean containsKey(Object key);
    boolean containsValue(Object value);
    V get(Object key);
    Set<K> keySet();
    Collection<V> values();
}

public class Arrays {
    public static <T> Stream<T> stream(T[] array);
    public static Stream stream(int[] array);
    public static Stream stream(long[] array);
    public static Stream stream(double[] array);
    public static Stream stream(short[] array);
    public static Stream stream(byte[] array);
    public static Stream stream(char[] array);
    public static Stream stream(float[] array);
    public static <T> List<T> asList(T... a);
}
"#;

const JAVA_UTIL_STREAM: &str = r#"
package java.util.stream;

public interface Stream<T> {
    long count();
}
"#;
