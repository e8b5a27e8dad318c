class Verbatim
{
    string path = @"C:\データ\ファイル.txt";
    string quoted = @"彼は""こんにちは""と言った";
    string multi = @"一行目
二行目";
    string empty = @"";
    char c = '\\';
}
