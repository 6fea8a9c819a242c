"""Dependency parser backends.

Both backends expose one method, `parse(text, split)`, returning a
list of sentences where each sentence is a list of `Row` tuples with
a 1-based in-sentence head id (0 marks the root).  `SpacyParser`
wraps a statistical pipeline; `BuiltinParser` is a deterministic rule
parser with no model dependency, meant for fixtures, tests, and
offline runs.  Its trees follow the CLEAR conventions the downstream
pattern rules expect: the copula heads copular clauses, so in
"Neymar is not a diver" the negation attaches to "is".
"""

import re
from typing import NamedTuple

from .config import BUILTIN_MODEL
from .errors import AdapterError


class Row(NamedTuple):
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str


def load_parser(model: str):
    if model == BUILTIN_MODEL:
        return BuiltinParser()
    return SpacyParser(model)


class SpacyParser:
    """Adapter around a spaCy pipeline selected by model name."""

    def __init__(self, model: str):
        try:
            import spacy
        except ImportError:
            raise AdapterError(
                f"cannot load parser model {model!r}: spaCy is not installed"
                " (pip install 'claimkit-nlp-adapter[spacy]' or use --model builtin)"
            ) from None
        try:
            self._nlp = spacy.load(model)
        except Exception as exc:
            raise AdapterError(f"cannot load parser model {model!r}: {exc}") from exc

    def parse(self, text: str, split: bool = True) -> list[list[Row]]:
        doc = self._nlp(text)
        spans = doc.sents if split else [doc[:]]
        sentences = []
        for span in spans:
            tokens = [t for t in span if not t.is_space]
            if not tokens:
                continue
            ids = {t.i: i + 1 for i, t in enumerate(tokens)}
            rows = []
            for t in tokens:
                is_root = t.head.i == t.i
                head = 0 if is_root else ids.get(t.head.i, ids[span.root.i])
                rows.append(Row(t.text, t.lemma_, t.pos_, head, "ROOT" if is_root else t.dep_))
            sentences.append(rows)
        return sentences


_TOKEN_RE = re.compile(r"'s|\w+|[^\w\s]", re.UNICODE)
_PUNCT_RE = re.compile(r"[^\w\s]+")
_TERMINATORS = {".", "?", "!"}

_DETERMINERS = {"a", "an", "the", "this", "that", "these", "those"}
_BE_FORMS = {"be", "is", "are", "was", "were", "am", "been", "being"}
_DO_FORMS = {"do", "does", "did", "done"}
_HAVE_FORMS = {"have", "has", "had", "having"}
_MODALS = {"will", "would", "can", "could", "may", "might", "must", "shall", "should"}
_AUX_FORMS = _BE_FORMS | _DO_FORMS | _HAVE_FORMS | _MODALS
_NEGATIONS = {"not", "n't"}
_ADVERBS = {
    "too", "much", "very", "really", "twice", "never", "always", "often",
    "again", "here", "there", "now", "then", "well", "also", "still",
}
_WH_ADVERBS = {"why", "how", "when", "where"}
_ADPOSITIONS = {"against", "by", "in", "of", "on", "for", "with", "at", "from", "to", "about", "during"}
_PRONOUNS = {"he", "she", "it", "they", "we", "you", "i", "who", "what", "his", "her", "its", "their"}
_CONJUNCTIONS = {"and", "or", "but"}
_NOMINAL_TAGS = {"NOUN", "PROPN", "NUM", "PRON"}

_VERB_LEMMAS = {
    "dive", "need", "stop", "win", "score", "upload", "play", "watch", "miss",
    "fall", "go", "say", "see", "get", "make", "take", "come", "know", "give",
    "tell", "call", "try", "ask", "feel", "leave", "keep", "seem", "help",
    "talk", "turn", "start", "show", "hear", "run", "move", "like", "believe",
    "hold", "bring", "happen", "write", "lose", "pay", "meet", "continue",
    "learn", "change", "lead", "follow", "create", "speak", "read", "add",
    "grow", "open", "walk", "offer", "remember", "love", "consider", "appear",
    "buy", "wait", "serve", "send", "expect", "build", "stay", "cut", "reach",
    "remain", "claim", "cheat", "pretend", "prove", "deny", "accuse", "blame",
    "defend", "fake", "flop", "roll", "tumble", "exaggerate", "deserve",
    "earn", "kick", "tackle", "foul", "injure", "hurt", "complain", "argue",
    "agree", "admit", "insist", "suggest", "report", "record", "film", "post",
    "share", "comment", "discuss", "debate", "judge", "decide", "think",
    "want", "use", "find", "fool", "trick", "look", "act",
}

_IRREGULAR_VERBS = {
    "won": "win", "fell": "fall", "went": "go", "said": "say", "saw": "see",
    "got": "get", "made": "make", "took": "take", "came": "come",
    "knew": "know", "gave": "give", "told": "tell", "felt": "feel",
    "left": "leave", "kept": "keep", "heard": "hear", "ran": "run",
    "held": "hold", "brought": "bring", "wrote": "write", "lost": "lose",
    "paid": "pay", "met": "meet", "led": "lead", "spoke": "speak",
    "grew": "grow", "bought": "buy", "sent": "send", "built": "build",
    "thought": "think", "found": "find", "caught": "catch", "fought": "fight",
}


def _inflections(lemma: str) -> list[str]:
    forms = [lemma]
    if lemma.endswith(("s", "sh", "ch", "x", "z", "o")):
        forms.append(lemma + "es")
    elif lemma.endswith("y") and len(lemma) > 2 and lemma[-2] not in "aeiou":
        forms.append(lemma[:-1] + "ies")
    else:
        forms.append(lemma + "s")
    if lemma.endswith("e"):
        forms.append(lemma + "d")
        forms.append(lemma[:-1] + "ing")
    else:
        forms.append(lemma + "ed")
        forms.append(lemma + "ing")
    return forms


_VERB_FORMS = {form: lemma for lemma in _VERB_LEMMAS for form in _inflections(lemma)}
_VERB_FORMS.update(_IRREGULAR_VERBS)


def _strip_plural(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ses", "ches", "shes", "xes", "zes")) and len(word) > 4:
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss") and len(word) > 3:
        return word[:-1]
    return word


class BuiltinParser:
    """Rule parser for plain English titles and snippets.

    Coverage is intentionally small: subject/verb/object clauses,
    copular clauses, possessives, negation, auxiliaries, adverbs, and
    prepositional phrases.  Anything unrecognized still yields a valid
    single-root tree by attaching to the root with deprel "dep".
    """

    def parse(self, text: str, split: bool = True) -> list[list[Row]]:
        tokens = _TOKEN_RE.findall(text)
        if not tokens:
            return []
        sentences = self._split(tokens) if split else [tokens]
        return [self._parse_sentence(s) for s in sentences if s]

    def _split(self, tokens: list[str]) -> list[list[str]]:
        sentences = []
        current: list[str] = []
        for i, tok in enumerate(tokens):
            current.append(tok)
            nxt = tokens[i + 1] if i + 1 < len(tokens) else None
            if tok in _TERMINATORS and nxt not in _TERMINATORS and nxt is not None:
                sentences.append(current)
                current = []
        if current:
            sentences.append(current)
        return sentences

    def _parse_sentence(self, tokens: list[str]) -> list[Row]:
        upos = self._tag(tokens)
        lemmas = [self._lemma(tokens[i], upos[i]) for i in range(len(tokens))]
        heads, rels = self._attach(tokens, upos)
        return [
            Row(tokens[i], lemmas[i], upos[i], heads[i], rels[i]) for i in range(len(tokens))
        ]

    def _tag(self, tokens: list[str]) -> list[str]:
        upos = []
        for i, form in enumerate(tokens):
            low = form.lower()
            if _PUNCT_RE.fullmatch(form):
                tag = "PUNCT"
            elif low.isdigit():
                tag = "NUM"
            elif low == "'s" or low in _NEGATIONS:
                tag = "PART"
            elif low == "to":
                nxt = tokens[i + 1].lower() if i + 1 < len(tokens) else ""
                tag = "PART" if nxt in _VERB_FORMS else "ADP"
            elif low in _DETERMINERS:
                tag = "DET"
            elif low in _AUX_FORMS:
                tag = "AUX"
            elif low in _WH_ADVERBS or low in _ADVERBS:
                tag = "ADV"
            elif low in _ADPOSITIONS:
                tag = "ADP"
            elif low in _PRONOUNS:
                tag = "PRON"
            elif low in _CONJUNCTIONS:
                tag = "CCONJ"
            elif form[0].isupper():
                tag = "PROPN"
            elif low in _VERB_FORMS:
                tag = "VERB"
            else:
                tag = "NOUN"
            upos.append(tag)
        # A verb form right after a determiner or possessive marker is
        # being used as a noun ("the dives", "Neymar 's dives").
        for i in range(1, len(upos)):
            if upos[i] == "VERB" and (upos[i - 1] == "DET" or tokens[i - 1].lower() == "'s"):
                upos[i] = "NOUN"
        return upos

    def _lemma(self, form: str, upos: str) -> str:
        low = form.lower()
        if upos == "AUX":
            if low in _BE_FORMS:
                return "be"
            if low in _DO_FORMS:
                return "do"
            if low in _HAVE_FORMS:
                return "have"
            return low
        if upos == "VERB" and low in _VERB_FORMS:
            return _VERB_FORMS[low]
        if upos == "PROPN":
            return form
        if upos == "NOUN":
            return _VERB_FORMS.get(low, _strip_plural(low))
        return low

    def _attach(self, tokens: list[str], upos: list[str]) -> tuple[list[int], list[str]]:
        n = len(tokens)
        root = self._pick_root(tokens, upos)
        heads: list[int | None] = [None] * n
        rels: list[str | None] = [None] * n
        heads[root], rels[root] = -1, "ROOT"

        runs = self._nominal_runs(upos)
        subject_run = None
        if upos[root] in ("VERB", "AUX"):
            pre_root = [run for run in runs if run[-1] < root]
            if pre_root:
                subject_run = pre_root[-1]

        for run in runs:
            if root in run:
                for i in run:
                    if i != root:
                        heads[i], rels[i] = root, "nummod" if upos[i] == "NUM" else "compound"
                continue
            head_tok = run[-1]
            for i in run[:-1]:
                if i + 1 < n and tokens[i + 1].lower() == "'s":
                    continue
                heads[i], rels[i] = head_tok, "nummod" if upos[i] == "NUM" else "compound"
            heads[head_tok], rels[head_tok] = self._attach_nominal(run, root, tokens, upos)
            if run is subject_run:
                rels[head_tok] = "nsubj"

        for i in range(n):
            if heads[i] is not None:
                continue
            low = tokens[i].lower()
            tag = upos[i]
            if tag == "PUNCT":
                heads[i], rels[i] = root, "punct"
            elif low in _NEGATIONS:
                heads[i], rels[i] = root, "neg"
            elif tag == "AUX":
                target = self._next_with_tag(upos, i, {"VERB"})
                heads[i], rels[i] = (target if target is not None else root), "aux"
            elif low == "to" and tag == "PART":
                target = self._next_with_tag(upos, i, {"VERB"})
                heads[i], rels[i] = (target if target is not None else root), "aux"
            elif tag == "VERB":
                heads[i], rels[i] = root, "xcomp"
            elif tag == "DET":
                target = self._next_with_tag(upos, i, _NOMINAL_TAGS)
                heads[i], rels[i] = (target if target is not None else root), "det"
            elif low == "'s":
                heads[i], rels[i] = i - 1 if i > 0 else root, "case"
            elif tag == "ADP":
                heads[i], rels[i] = self._nearest_left(upos, i, {"VERB", "AUX"}, root), "prep"
            elif tag == "ADV":
                if i + 1 < n and upos[i + 1] == "ADV":
                    heads[i], rels[i] = i + 1, "advmod"
                else:
                    heads[i], rels[i] = root, "advmod"
            elif tag == "CCONJ":
                heads[i], rels[i] = root, "cc"
            else:
                heads[i], rels[i] = root, "dep"

        # Possessors point forward across the marker to the possessed noun.
        for i in range(n - 2):
            if tokens[i + 1].lower() == "'s" and upos[i] in _NOMINAL_TAGS:
                target = self._next_with_tag(upos, i + 1, _NOMINAL_TAGS)
                if target is not None and target != i:
                    heads[i], rels[i] = target, "poss"

        self._break_cycles(heads, rels, root)
        return [h + 1 for h in heads], rels

    def _pick_root(self, tokens: list[str], upos: list[str]) -> int:
        for i, tag in enumerate(upos):
            if tag == "VERB":
                return i
        for i, form in enumerate(tokens):
            if upos[i] == "AUX" and form.lower() in _BE_FORMS:
                return i
        for i, tag in enumerate(upos):
            if tag == "AUX":
                return i
        nominals = [i for i, tag in enumerate(upos) if tag in _NOMINAL_TAGS]
        if nominals:
            blocked = self._preposition_objects(upos)
            free = [i for i in nominals if i not in blocked]
            return (free or nominals)[-1]
        return 0

    def _nominal_runs(self, upos: list[str]) -> list[list[int]]:
        runs = []
        current: list[int] = []
        for i, tag in enumerate(upos):
            if tag in _NOMINAL_TAGS:
                current.append(i)
            elif current:
                runs.append(current)
                current = []
        if current:
            runs.append(current)
        return runs

    def _attach_nominal(self, run, root, tokens, upos) -> tuple[int, str]:
        start = run[0]
        j = start - 1
        while j >= 0 and (upos[j] in ("DET", "ADJ") or tokens[j].lower() == "'s"):
            j -= 1
        if j >= 0 and upos[j] == "ADP":
            return j, "pobj"
        if upos[root] == "AUX" and run[-1] > root:
            return root, "attr"
        if upos[root] == "VERB" and run[-1] > root:
            return root, "dobj"
        return root, "dep"

    def _preposition_objects(self, upos: list[str]) -> set[int]:
        blocked = set()
        for i, tag in enumerate(upos):
            if tag != "ADP":
                continue
            j = i + 1
            while j < len(upos) and (upos[j] in _NOMINAL_TAGS or upos[j] in ("DET", "ADJ")):
                if upos[j] in _NOMINAL_TAGS:
                    blocked.add(j)
                j += 1
        return blocked

    @staticmethod
    def _next_with_tag(upos: list[str], start: int, tags: set[str]) -> int | None:
        for j in range(start + 1, len(upos)):
            if upos[j] in tags:
                return j
        return None

    @staticmethod
    def _nearest_left(upos: list[str], start: int, tags: set[str], fallback: int) -> int:
        for j in range(start - 1, -1, -1):
            if upos[j] in tags or j == fallback:
                return j
        return fallback

    @staticmethod
    def _break_cycles(heads: list[int | None], rels: list[str | None], root: int) -> None:
        for i in range(len(heads)):
            seen = set()
            j = i
            while j != root and j not in seen:
                seen.add(j)
                j = heads[j]
            if j != root:
                heads[i], rels[i] = root, "dep"
