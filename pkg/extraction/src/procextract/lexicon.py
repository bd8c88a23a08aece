"""Tiny closed-class lexicon and verb morphology.

Everything downstream (pronoun resolution, clause pattern matching, answer
flagging) classifies tokens against these sets.  The verb list covers common
procedural-text verbs; unknown content words default to nouns, which is the
right bias for noun-phrase detection in this domain.
"""

from __future__ import annotations

import re

PRONOUNS = frozenset("""
    i you he she it we they me him her us them
    this these those
    its his hers theirs ours yours mine
    itself himself herself themselves
""".split())

# Pronouns worth replacing by an antecedent (possessives and reflexives stay).
REPLACEABLE_PRONOUNS = frozenset({"it", "they", "them", "he", "she", "him", "her",
                                  "this", "these", "those"})

DETERMINERS = frozenset("""
    the a an this that these those its their his her our your my
    some any each every all both many several few most much no
""".split())

# Tokens that terminate a noun phrase (prepositions, conjunctions, misc).
STOP_TOKENS = frozenset("""
    in on at by for with from to into onto through over under out off up down
    like as and or but nor so yet because when while after before during
    against between among around about if then than also not very there where
""".split())

AUXILIARIES = frozenset("""
    be is are was were been being am
    have has had having
    do does did doing done
    will would can could may might must should shall
""".split())

VERB_LEMMAS = frozenset("""
    be have do make use provide control protect move store synthesize produce
    grow repair carry push pump filter transport contain create form release
    absorb break enter leave flow turn rise fall heat cool mix split join send
    receive build destroy supply ruin cause become get take give go come run
    work open close start stop change divide expand contract need travel pass
    reach bring hold keep generate convert transfer emit capture collect rain
    eat drink breathe live die melt freeze burn explode attack defend direct
    deliver remove attach connect surround support separate describe explain
""".split())

IRREGULAR_FORMS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "been": "be",
    "being": "be", "am": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do", "doing": "do",
    "made": "make", "took": "take", "taken": "take", "gave": "give",
    "given": "give", "went": "go", "gone": "go", "got": "get", "gotten": "get",
    "brought": "bring", "held": "hold", "kept": "keep", "built": "build",
    "sent": "send", "broke": "break", "broken": "break", "rose": "rise",
    "risen": "rise", "fell": "fall", "fallen": "fall", "came": "come",
    "ran": "run", "became": "become", "grew": "grow", "grown": "grow",
    "left": "leave", "ate": "eat", "eaten": "eat", "drank": "drink",
    "drunk": "drink", "froze": "freeze", "frozen": "freeze",
}

_VOWELS = "aeiou"


def third_person(lemma: str) -> str:
    """Inflect a lemma for third person singular (provide -> provides)."""
    if lemma == "be":
        return "is"
    if lemma == "have":
        return "has"
    if lemma == "do":
        return "does"
    if re.search(r"(s|sh|ch|x|z|o)$", lemma):
        return lemma + "es"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in _VOWELS:
        return lemma[:-1] + "ies"
    return lemma + "s"


def _inflections(lemma: str) -> set[str]:
    forms = {lemma, third_person(lemma)}
    if lemma.endswith("e"):
        forms.add(lemma + "d")
        forms.add(lemma[:-1] + "ing")
    elif lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in _VOWELS:
        forms.add(lemma[:-1] + "ied")
        forms.add(lemma + "ing")
    else:
        forms.add(lemma + "ed")
        forms.add(lemma + "ing")
        if re.search(rf"[^{_VOWELS}][{_VOWELS}][^{_VOWELS}wxy]$", lemma):
            forms.add(lemma + lemma[-1] + "ed")   # stop -> stopped
            forms.add(lemma + lemma[-1] + "ing")  # run -> running
    return forms


VERB_FORMS: dict[str, str] = {}
for _lemma in VERB_LEMMAS:
    for _form in _inflections(_lemma):
        VERB_FORMS.setdefault(_form, _lemma)
VERB_FORMS.update(IRREGULAR_FORMS)

TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)?")


def tokenize(text: str) -> list[str]:
    return [m.group(0).lower() for m in TOKEN_RE.finditer(text)]


def token_spans(text: str) -> list[tuple[str, int, int]]:
    """Lowercased tokens with their character offsets in the original text."""
    return [(m.group(0).lower(), m.start(), m.end()) for m in TOKEN_RE.finditer(text)]


def is_verb(token: str) -> bool:
    return token in VERB_FORMS


def verb_lemma(token: str) -> str | None:
    return VERB_FORMS.get(token)


def strip_determiner(tokens: list[str]) -> list[str]:
    out = list(tokens)
    while out and out[0] in DETERMINERS:
        out = out[1:]
    return out
