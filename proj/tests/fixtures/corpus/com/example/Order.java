package com.example;

import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;
import java.util.function.Predicate;

public class Order {

    public static class Line {
        final String sku;
        final int quantity;
        final int unitCents;

        Line(String sku, int quantity, int unitCents) {
            this.sku = sku;
            this.quantity = quantity;
            this.unitCents = unitCents;
        }

        int totalCents() {
            return quantity * unitCents;
        }
    }

    private final List<Line> lines = new ArrayList<Line>();
    private Map<String, Integer> discounts = new HashMap<String, Integer>();

    public void addLine(Line line) {
        if (line == null) {
            throw new IllegalArgumentException("line");
        }
        lines.add(line);
    }

    public Line makeLine(String sku, int quantity, int unitCents) {
        return new Line(sku, quantity, unitCents);
    }

    public int subtotal() {
        int sum = 0;
        for (Line line : lines) {
            sum += line.totalCents();
        }
        return sum;
    }

    public int discountedTotal() {
        int total = subtotal();
        for (Map.Entry<String, Integer> entry : discounts.entrySet()) {
            Integer percent = entry.getValue();
            if (percent != null && percent > 0) {
                total -= total * percent / 100;
            }
        }
        return total;
    }

    public List<Line> expensiveLines(int thresholdCents) {
        Predicate<Line> isExpensive = line -> line.totalCents() > thresholdCents;
        List<Line> out = new ArrayList<Line>();
        for (Line line : lines) {
            if (isExpensive.test(line)) {
                out.add(line);
            }
        }
        return out;
    }

    public int countIf(Predicate<Line> filter) {
        int count = 0;
        for (Line line : lines) {
            if (filter.test(line)) {
                count++;
            }
        }
        return count;
    }

    public void setDiscount(String sku, int percent) {
        int clamped = percent < 0 ? 0 : percent;
        if (clamped > 90) {
            clamped = 90;
        }
        discounts.put(sku, clamped);
    }
}
