class Crlf {
    // 改行コード CRLF のコメント
    String s = "文字列";
    /* ブロック
       コメント */
}
