#!/usr/bin/env python3
"""Reference Porter stemmer (original 1980 algorithm) used to freeze the
expected outputs in ../unit/ingest tests.

This is an independent transcription kept deliberately separate from the C++
implementation; it is validated against the classic anchor pairs below before
being trusted to generate the frozen vocabulary table.
"""

VOWELS = set("aeiou")


def is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in VOWELS:
        return False
    if c == "y":
        return i == 0 or not is_consonant(word, i - 1)
    return True


def measure(stem: str) -> int:
    """Number of VC sequences in [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        v = not is_consonant(stem, i)
        if prev_vowel and not v:
            m += 1
        prev_vowel = v
    return m


def has_vowel(stem: str) -> bool:
    return any(not is_consonant(stem, i) for i in range(len(stem)))


def ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and is_consonant(word, len(word) - 1)
    )


def ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    if not (
        is_consonant(word, len(word) - 3)
        and not is_consonant(word, len(word) - 2)
        and is_consonant(word, len(word) - 1)
    ):
        return False
    return word[-1] not in "wxy"


def replace_suffix(word, suffix, repl, cond):
    stem = word[: len(word) - len(suffix)]
    if cond(stem):
        return stem + repl
    return word


def step1a(w):
    for suf, repl in (("sses", "ss"), ("ies", "i"), ("ss", "ss"), ("s", "")):
        if w.endswith(suf):
            return w[: len(w) - len(suf)] + repl
    return w


def step1b(w):
    if w.endswith("eed"):
        stem = w[:-3]
        if measure(stem) > 0:
            return w[:-1]
        return w
    hit = None
    for suf in ("ed", "ing"):
        if w.endswith(suf):
            stem = w[: len(w) - len(suf)]
            if has_vowel(stem):
                hit = stem
            break
    if hit is None:
        return w
    w = hit
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if ends_double_consonant(w) and w[-1] not in "lsz":
        return w[:-1]
    if measure(w) == 1 and ends_cvc(w):
        return w + "e"
    return w


def step1c(w):
    if w.endswith("y") and has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def longest_rule(w, rules):
    best = None
    for suf, repl in rules:
        if w.endswith(suf) and (best is None or len(suf) > len(best[0])):
            best = (suf, repl)
    return best


def step2(w):
    r = longest_rule(w, STEP2)
    if r:
        suf, repl = r
        stem = w[: len(w) - len(suf)]
        if measure(stem) > 0:
            return stem + repl
    return w


def step3(w):
    r = longest_rule(w, STEP3)
    if r:
        suf, repl = r
        stem = w[: len(w) - len(suf)]
        if measure(stem) > 0:
            return stem + repl
    return w


def step4(w):
    best = None
    for suf in STEP4:
        if w.endswith(suf) and (best is None or len(suf) > len(best)):
            best = suf
    if best is None:
        return w
    stem = w[: len(w) - len(best)]
    if measure(stem) > 1:
        if best == "ion" and not stem.endswith(("s", "t")):
            return w
        return stem
    return w


def step5a(w):
    if w.endswith("e"):
        stem = w[:-1]
        m = measure(stem)
        if m > 1 or (m == 1 and not ends_cvc(stem)):
            return stem
    return w


def step5b(w):
    if measure(w) > 1 and ends_double_consonant(w) and w.endswith("l"):
        return w[:-1]
    return w


def stem(word: str) -> str:
    if len(word) <= 2:
        return word
    for fn in (step1a, step1b, step1c, step2, step3, step4, step5a, step5b):
        word = fn(word)
    return word


# Classic anchor pairs: final outputs of the published algorithm.
ANCHORS = {
    "caresses": "caress", "ponies": "poni", "ties": "ti", "caress": "caress",
    "cats": "cat", "feed": "feed", "agreed": "agre", "plastered": "plaster",
    "bled": "bled", "motoring": "motor", "sing": "sing", "sized": "size",
    "hopping": "hop", "tanned": "tan", "falling": "fall", "hissing": "hiss",
    "failing": "fail", "filing": "file", "happy": "happi", "sky": "sky",
    "relational": "relat", "conditional": "condit", "rational": "ration",
    "digitizer": "digit", "operator": "oper", "feudalism": "feudal",
    "hopefulness": "hope", "goodness": "good", "revival": "reviv",
    "allowance": "allow", "inference": "infer", "airliner": "airlin",
    "adjustable": "adjust", "defensible": "defens", "irritant": "irrit",
    "replacement": "replac", "adjustment": "adjust", "dependent": "depend",
    "adoption": "adopt", "communism": "commun", "activate": "activ",
    "effective": "effect", "rate": "rate", "cease": "ceas", "roll": "roll",
    "studies": "studi", "a": "a", "connection": "connect",
}


def main():
    bad = [(w, stem(w), e) for w, e in ANCHORS.items() if stem(w) != e]
    if bad:
        for w, got, exp in bad:
            print(f"MISMATCH {w}: got {got}, want {exp}")
        raise SystemExit(1)
    print("all anchors ok")
    # Frozen table for the C++ unit tests: anchors plus domain-flavored words.
    extra = [
        "account", "balance", "portfolio", "transaction", "customer",
        "services", "repository", "controller", "validation", "booking",
        "flights", "sessions", "quotes", "trading", "holdings", "orders",
        "profile", "login", "logout", "update", "updating", "created",
        "creation", "deleted", "deletion", "queries", "querying", "mapped",
        "mapping", "response", "request", "parse", "parsing", "http",
        "string", "integer", "database", "tables", "index", "indices",
        "user", "username", "password", "email", "address", "number",
        "availability", "generalization", "oscillators", "analyzer",
    ]
    words = sorted(set(list(ANCHORS.keys()) + extra))
    with open("porter_expected.csv", "w") as f:
        for w in words:
            f.write(f"{w},{stem(w)}\n")
    print(f"wrote porter_expected.csv ({len(words)} rows)")


if __name__ == "__main__":
    main()
