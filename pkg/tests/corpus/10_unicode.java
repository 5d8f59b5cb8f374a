class Grüße {
    String s = "héllo wörld";   /* ünïcode comment */
    char c = 'x';
}
