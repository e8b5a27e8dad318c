package com.example.shop.member;

import java.util.ArrayList;
import java.util.List;

/**
 * 会員ポイントの加算と利用を記録する台帳。
 */
public class PointLedger {
    private final List<Entry> entries = new ArrayList<>();

    public record Entry(long memberId, long orderId, int delta) {}

    // 注文確定時にポイントを加算する
    public void credit(long memberId, long orderId, int value) {
        entries.add(new Entry(memberId, orderId, value));
    }

    /* ポイント利用 */
    public void debit(long memberId, long orderId, int value) {
        if (balance(memberId) < value) {
            throw new IllegalStateException("ポイント残高が不足しています");
        }
        entries.add(new Entry(memberId, orderId, -value));
    }

    public int balance(long memberId) {
        int sum = 0;
        for (Entry e : entries) {
            if (e.memberId() == memberId) sum += e.delta();
        }
        return sum;
    }
}
