package com.example;

import java.util.ArrayList;
import java.util.List;

public final class StringUtil {

    private static final String PREFIX = "s" + "fixed";

    public static String greet(String name) {
        if (name == null) {
            return "hello, world";
        }
        return "hello, " + name;
    }

    public static String tag(String label, int index) {
        String suffix = "#" + index;
        return label + suffix;
    }

    public static int safeLength(String s) {
        if (s != null) {
            return s.length();
        }
        return 0;
    }

    public static List<String> splitWords(String text) {
        List<String> words = new ArrayList<String>();
        if (text == null || text.isEmpty()) {
            return words;
        }
        for (String part : text.split(" ")) {
            if (!part.isEmpty()) {
                words.add(part);
            }
        }
        return words;
    }

    public static String firstOr(List<String> values, String fallback) {
        if (values == null) {
            return fallback;
        }
        return values.isEmpty() ? fallback : values.get(0);
    }

    static int plainSum(int a, int b) {
        return a + b;
    }
}
