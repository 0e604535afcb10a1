"""Hand-scored ROUGE pairs: (candidate, reference, unit, R-1, R-2, R-L) with (P, R, F1) triples."""

ONE = (1.0, 1.0, 1.0)
ZERO = (0.0, 0.0, 0.0)

GOLDEN = [
    ("abc", "abc", "char", ONE, ONE, ONE),
    ("ab", "abcd", "char", (1.0, 0.5, 2 / 3), (1.0, 1 / 3, 0.5), (1.0, 0.5, 2 / 3)),
    ("ace", "abcde", "char", (1.0, 0.6, 0.75), ZERO, (1.0, 0.6, 0.75)),
    ("aab", "ab", "char", (2 / 3, 1.0, 0.8), (0.5, 1.0, 2 / 3), (2 / 3, 1.0, 0.8)),
    ("ba", "ab", "char", ONE, ZERO, (0.5, 0.5, 0.5)),
    ("今天下雨", "今天晴", "char", (0.5, 2 / 3, 4 / 7), (1 / 3, 0.5, 0.4), (0.5, 2 / 3, 4 / 7)),
    ("xyz", "abc", "char", ZERO, ZERO, ZERO),
    ("AB", "ab", "char", ONE, ONE, ONE),
    ("a b c", "abc", "char", ONE, ONE, ONE),
    (["the", "cat", "sat"], ["the", "cat"], "token", (2 / 3, 1.0, 0.8), (0.5, 1.0, 2 / 3), (2 / 3, 1.0, 0.8)),
    ("", "abc", "char", ZERO, ZERO, ZERO),
]
