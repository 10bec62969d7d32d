#!/usr/bin/env python3
"""Writes the hand-annotated sample corpus and its expected ABDICO records.

Run once from this directory; the outputs are checked in:
    sample/            corpus directory (meta, docs, statements, chains)
    sample_records.jsonl  expected parse_statement output, derived by hand
"""

import json
import os

STOP = {"the", "a", "an", "to", "of", "by", "with", "and", "are", "be", "do", "each", "after",
        "within", ":", ";", ",", ".", "it"}

# (text, lemma, pos, head, deprel) per token; frames as (predicate, [(label, start, end)]).
STATEMENTS = [
    ("s01", "d1",
     [("Members", "member", "noun", 2, "nsubj"), ("must", "must", "other", 2, "aux"),
      ("submit", "submit", "verb", -1, "root"), ("reports", "report", "noun", 2, "obj"),
      (".", ".", "other", 2, "punct")],
     [(2, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARG1", 3, 4)])]),
    ("s02", "d1",
     [("The", "the", "other", 1, "det"), ("committee", "committee", "noun", 3, "nsubj"),
      ("must", "must", "other", 3, "aux"), ("approve", "approve", "verb", -1, "root"),
      ("releases", "release", "noun", 3, "obj"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG1", 4, 5)])]),
    ("s03", "d1",
     [("The", "the", "other", 1, "det"), ("meeting", "meeting", "noun", 2, "nsubj"),
      ("occurred", "occur", "verb", -1, "root"), (".", ".", "other", 2, "punct")],
     [(2, [("ARG1", 0, 2)])]),
    ("s04", "d1",
     [("Submit", "submit", "verb", -1, "root"), ("reports", "report", "noun", 0, "obj"),
      ("monthly", "monthly", "other", 0, "advmod"), (".", ".", "other", 0, "punct")],
     [(0, [("ARG1", 1, 2), ("ARGM-TMP", 2, 3)])]),
    ("s05", "d1",
     [("The", "the", "other", 1, "det"), ("committee", "committee", "noun", 3, "nsubj"),
      ("must", "must", "other", 3, "aux"), ("send", "send", "verb", -1, "root"),
      ("the", "the", "other", 5, "det"), ("report", "report", "noun", 3, "obj"),
      ("to", "to", "other", 8, "case"), ("the", "the", "other", 8, "det"),
      ("board", "board", "noun", 3, "obl"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG1", 4, 6), ("ARG2", 6, 9)])]),
    ("s06", "d1",
     [("The", "the", "other", 1, "det"), ("grant", "grant", "noun", 2, "nsubj"),
      ("defaults", "default", "verb", -1, "root"), ("to", "to", "other", 5, "case"),
      ("the", "the", "other", 5, "det"), ("foundation", "foundation", "noun", 2, "obl"),
      (".", ".", "other", 2, "punct")],
     [(2, [("ARG1", 0, 2), ("ARG2", 3, 6)])]),
    ("s07", "d1",
     [("Members", "member", "noun", 3, "nsubj"), ("must", "must", "other", 3, "aux"),
      ("not", "not", "other", 3, "advmod"), ("submit", "submit", "verb", -1, "root"),
      ("a", "a", "other", 5, "det"), ("proposal", "proposal", "noun", 3, "obj"),
      (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARGM-NEG", 2, 3), ("ARG1", 4, 6)])]),
    ("s08", "d1",
     [("The", "the", "other", 1, "det"), ("board", "board", "noun", 3, "nsubj"),
      ("may", "may", "other", 3, "aux"), ("delegate", "delegate", "verb", -1, "root"),
      ("review", "review", "noun", 3, "obj"), ("to", "to", "other", 6, "case"),
      ("mentors", "mentor", "noun", 3, "obl"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG1", 4, 5), ("ARG2", 5, 7)])]),
    ("s09", "d2",
     [("Approval", "approval", "noun", -1, "root"), (":", ":", "other", 0, "punct"),
      ("each", "each", "other", 3, "det"), ("release", "release", "noun", 6, "nsubj:pass"),
      ("shall", "shall", "other", 6, "aux"), ("be", "be", "other", 6, "aux:pass"),
      ("approved", "approve", "verb", 0, "parataxis"), ("after", "after", "other", 9, "mark"),
      ("members", "member", "noun", 9, "nsubj"), ("vote", "vote", "verb", 6, "advcl"),
      (".", ".", "other", 0, "punct")],
     [(9, [("ARG0", 8, 9)]), (6, [("ARG1", 2, 4), ("ARGM-MOD", 4, 5)])]),
    ("s10", "d1",
     [("Deadline", "deadline", "noun", -1, "root"), (":", ":", "other", 0, "punct"),
      ("the", "the", "other", 3, "det"), ("secretary", "secretary", "noun", 5, "nsubj"),
      ("shall", "shall", "other", 5, "aux"), ("file", "file", "verb", 0, "parataxis"),
      ("it", "it", "other", 5, "obj"), ("within", "within", "other", 9, "case"),
      ("ten", "ten", "other", 9, "nummod"), ("days", "day", "noun", 5, "obl"),
      (".", ".", "other", 0, "punct")],
     [(5, [("ARG0", 2, 4), ("ARGM-MOD", 4, 5), ("ARG1", 6, 7), ("ARGM-TMP", 7, 10)])]),
    ("s11", "d2",
     [("Guidance", "guidance", "noun", -1, "root"), (":", ":", "other", 0, "punct"),
      ("members", "member", "noun", 4, "nsubj"), ("should", "should", "other", 4, "aux"),
      ("document", "document", "verb", 0, "parataxis"), ("changes", "change", "noun", 4, "obj"),
      ("and", "and", "other", 9, "cc"), ("reviewers", "reviewer", "noun", 9, "nsubj"),
      ("carefully", "carefully", "other", 9, "advmod"), ("check", "check", "verb", 4, "conj"),
      ("the", "the", "other", 11, "det"), ("summary", "summary", "noun", 9, "obj"),
      (".", ".", "other", 0, "punct")],
     [(4, [("ARG0", 2, 3), ("ARGM-MOD", 3, 4), ("ARG1", 5, 6)]),
      (9, [("ARG0", 7, 8), ("ARGM-MNR", 8, 9), ("ARG1", 10, 12)])]),
    ("s12", "d2",
     [("Note", "note", "noun", -1, "root"), (":", ":", "other", 0, "punct"),
      ("staff", "staff", "noun", 3, "nsubj"), ("archive", "archive", "verb", 0, "parataxis"),
      ("minutes", "minute", "noun", 3, "obj"), (";", ";", "other", 0, "punct"),
      ("chairs", "chair", "noun", 7, "nsubj"), ("sign", "sign", "verb", 0, "parataxis"),
      ("minutes", "minute", "noun", 7, "obj"), ("promptly", "promptly", "other", 7, "advmod"),
      (".", ".", "other", 0, "punct")],
     [(3, [("ARG0", 2, 3), ("ARG1", 4, 5)]), (7, [("ARG0", 6, 7), ("ARG1", 8, 9)])]),
    ("s13", "d2",
     [("Rule", "rule", "noun", -1, "root"), (":", ":", "other", 0, "punct"),
      ("hosts", "host", "noun", 3, "nsubj"), ("open", "open", "verb", 0, "parataxis"),
      ("sessions", "session", "noun", 3, "obj"), (";", ";", "other", 0, "punct"),
      ("guests", "guest", "noun", 7, "nsubj"), ("close", "close", "verb", 0, "parataxis"),
      ("sessions", "session", "noun", 7, "obj"), (".", ".", "other", 0, "punct")],
     [(7, [("ARG0", 6, 7), ("ARG1", 8, 9)]), (3, [("ARG0", 2, 3), ("ARG1", 4, 5)])]),
    ("s14", "d3",
     [("Contributors", "contributor", "noun", 2, "nsubj:pass"), ("are", "be", "other", 2, "aux:pass"),
      ("required", "require", "verb", -1, "root"), ("to", "to", "other", 4, "mark"),
      ("pass", "pass", "verb", 2, "xcomp"), ("review", "review", "noun", 4, "obj"),
      (".", ".", "other", 2, "punct")],
     [(2, [("ARG2", 0, 1), ("ARG1", 3, 6)]), (4, [("ARG0", 0, 1), ("ARG1", 5, 6)])]),
    ("s15", "d3",
     [("The", "the", "other", 1, "det"), ("PMC", "PMC", "noun", 3, "nsubj"),
      ("shall", "shall", "other", 3, "aux"), ("grant", "grant", "verb", -1, "root"),
      ("commit", "commit", "noun", 5, "compound"), ("access", "access", "noun", 3, "obj"),
      ("to", "to", "other", 7, "case"), ("contributors", "contributor", "noun", 3, "obl"),
      (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG1", 4, 6), ("ARG2", 6, 8)])]),
    ("s16", "d3",
     [("Mentors", "mentor", "noun", 2, "nsubj"), ("should", "should", "other", 2, "aux"),
      ("report", "report", "verb", -1, "root"), ("progress", "progress", "noun", 2, "obj"),
      ("quarterly", "quarterly", "other", 2, "advmod"), (".", ".", "other", 2, "punct")],
     [(2, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARG1", 3, 4), ("ARGM-TMP", 4, 5)])]),
    ("s17", "d3",
     [("Vendors", "vendor", "noun", 3, "nsubj"), ("can", "can", "other", 3, "aux"),
      ("not", "not", "other", 3, "advmod"), ("sell", "sell", "verb", -1, "root"),
      ("alcohol", "alcohol", "noun", 3, "obj"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARGM-NEG", 2, 3), ("ARG1", 4, 5)])]),
    ("s18", "d3",
     [("Do", "do", "other", 2, "aux"), ("n't", "not", "other", 2, "advmod"),
      ("commit", "commit", "verb", -1, "root"), ("secrets", "secret", "noun", 2, "obj"),
      (".", ".", "other", 2, "punct")],
     [(2, [("ARGM-NEG", 1, 2), ("ARG1", 3, 4)])]),
    ("s19", "d3",
     [("Maintainers", "maintainer", "noun", 3, "nsubj"), ("ought", "ought", "other", 3, "aux"),
      ("to", "to", "other", 3, "mark"), ("publish", "publish", "verb", -1, "root"),
      ("notes", "note", "noun", 3, "obj"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARG1", 4, 5)])]),
    ("s20", "d4",
     [("The", "the", "other", 1, "det"), ("board", "board", "noun", 3, "nsubj"),
      ("will", "will", "other", 3, "aux"), ("review", "review", "verb", -1, "root"),
      ("budgets", "budget", "noun", 3, "obj"), (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG1", 4, 5)])]),
    ("s21", "d4",
     [("Applicants", "applicant", "noun", 3, "nsubj"), ("shall", "shall", "other", 3, "aux"),
      ("not", "not", "other", 3, "advmod"), ("submit", "submit", "verb", -1, "root"),
      ("duplicate", "duplicate", "other", 5, "amod"), ("proposals", "proposal", "noun", 3, "obj"),
      (".", ".", "other", 3, "punct")],
     [(3, [("ARG0", 0, 1), ("ARGM-MOD", 1, 3), ("ARG1", 4, 6)])]),
    ("s22", "d4",
     [("The", "the", "other", 1, "det"), ("chair", "chair", "noun", 8, "nsubj"),
      ("must", "must", "other", 8, "aux"), (",", ",", "other", 8, "punct"),
      ("with", "with", "other", 6, "case"), ("the", "the", "other", 6, "det"),
      ("deputy", "deputy", "noun", 8, "obl"), (",", ",", "other", 8, "punct"),
      ("countersign", "countersign", "verb", -1, "root"), ("contracts", "contract", "noun", 8, "obj"),
      (".", ".", "other", 8, "punct")],
     [(8, [("ARG0", 0, 2), ("ARGM-MOD", 2, 3), ("ARG0", 4, 7), ("ARG1", 9, 10)])]),
    ("s23", "d4",
     [("Releases", "release", "noun", 2, "nsubj:pass"), ("are", "be", "other", 2, "aux:pass"),
      ("approved", "approve", "verb", -1, "root"), ("by", "by", "other", 5, "case"),
      ("the", "the", "other", 5, "det"), ("board", "board", "noun", 2, "obl:agent"),
      (".", ".", "other", 2, "punct")],
     [(2, [("ARG1", 0, 1), ("ARG0", 3, 6)])]),
    ("s24", "d4",
     [("Records", "record", "noun", 3, "nsubj:pass"), ("shall", "shall", "other", 3, "aux"),
      ("be", "be", "other", 3, "aux:pass"), ("kept", "keep", "verb", -1, "root"),
      (".", ".", "other", 3, "punct")],
     [(3, [("ARG1", 0, 1), ("ARGM-MOD", 1, 2)])]),
    ("s25", "d4",
     [("Mentors", "mentor", "noun", 2, "nsubj"), ("must", "must", "other", 2, "aux"),
      ("guide", "guide", "verb", -1, "root"), ("new", "new", "other", 4, "amod"),
      ("podlings", "podling", "noun", 2, "obj"), (".", ".", "other", 2, "punct")],
     [(2, [("ARG1", 3, 5)]), (2, [("ARG0", 0, 1), ("ARGM-MOD", 1, 2), ("ARG1", 3, 5)])]),
]

# Expected records, worked out by hand from the annotations above.
# (id, (aim index, lemma, text), attribute, object, deontic, modal, negated, category)
# attribute/object: None or (spans, text).
EXPECTED = [
    ("s01", (2, "submit", "submit"), ([[0, 1]], "Members"), ([[3, 4]], "reports"), "must", "must", False, "Requirement"),
    ("s02", (3, "approve", "approve"), ([[0, 2]], "The committee"), ([[4, 5]], "releases"), "must", "must", False, "Requirement"),
    ("s03", (2, "occur", "occurred"), ([[0, 2]], "The meeting"), None, None, None, False, "Strategy"),
    ("s04", (0, "submit", "Submit"), None, ([[1, 2]], "reports"), None, None, False, "Strategy"),
    ("s05", (3, "send", "send"), ([[0, 2]], "The committee"), ([[4, 6]], "the report"), "must", "must", False, "Requirement"),
    ("s06", (2, "default", "defaults"), ([[0, 2]], "The grant"), ([[3, 6]], "to the foundation"), None, None, False, "Strategy"),
    ("s07", (3, "submit", "submit"), ([[0, 1]], "Members"), ([[4, 6]], "a proposal"), "must not", "must", True, "Restriction"),
    ("s08", (3, "delegate", "delegate"), ([[0, 2]], "The board"), ([[4, 5]], "review"), "may", "may", False, "Strategy"),
    ("s09", (6, "approve", "approved"), None, ([[2, 4]], "each release"), "shall", "shall", False, "Requirement"),
    ("s10", (5, "file", "file"), ([[2, 4]], "the secretary"), ([[6, 7]], "it"), "shall", "shall", False, "Requirement"),
    ("s11", (9, "check", "check"), ([[7, 8]], "reviewers"), ([[10, 12]], "the summary"), None, None, False, "Strategy"),
    ("s12", (7, "sign", "sign"), ([[6, 7]], "chairs"), ([[8, 9]], "minutes"), None, None, False, "Strategy"),
    ("s13", (3, "open", "open"), ([[2, 3]], "hosts"), ([[4, 5]], "sessions"), None, None, False, "Strategy"),
    ("s14", (2, "require", "required"), None, ([[3, 6]], "to pass review"), None, None, False, "Strategy"),
    ("s15", (3, "grant", "grant"), ([[0, 2]], "The PMC"), ([[4, 6]], "commit access"), "shall", "shall", False, "Requirement"),
    ("s16", (2, "report", "report"), ([[0, 1]], "Mentors"), ([[3, 4]], "progress"), "should", "should", False, "Norm"),
    ("s17", (3, "sell", "sell"), ([[0, 1]], "Vendors"), ([[4, 5]], "alcohol"), "can not", "can", True, "Restriction"),
    ("s18", (2, "commit", "commit"), None, ([[3, 4]], "secrets"), "n't", None, True, "Restriction"),
    ("s19", (3, "publish", "publish"), ([[0, 1]], "Maintainers"), ([[4, 5]], "notes"), "ought", "ought", False, "Norm"),
    ("s20", (3, "review", "review"), ([[0, 2]], "The board"), ([[4, 5]], "budgets"), "will", "will", False, "Strategy"),
    ("s21", (3, "submit", "submit"), ([[0, 1]], "Applicants"), ([[4, 6]], "duplicate proposals"), "shall not", "shall", True, "Restriction"),
    ("s22", (8, "countersign", "countersign"), ([[0, 2], [4, 7]], "The chair with the deputy"), ([[9, 10]], "contracts"), "must", "must", False, "Requirement"),
    ("s23", (2, "approve", "approved"), ([[3, 6]], "by the board"), ([[0, 1]], "Releases"), None, None, False, "Strategy"),
    ("s24", (3, "keep", "kept"), None, ([[0, 1]], "Records"), "shall", "shall", False, "Requirement"),
    ("s25", (2, "guide", "guide"), ([[0, 1]], "Mentors"), ([[3, 5]], "new podlings"), "must", "must", False, "Requirement"),
]

DOCS = [
    ("d1", {"source": "bylaws"}, [1.0, 0.0, 0.5, 0.0]),
    ("d2", {"source": "guide"}, [0.0, 1.0, 0.0, 0.5]),
    ("d3", {"source": "policy"}, [0.5, 0.5, 1.0, 0.0]),
    ("d4", {"source": "charter"}, [0.25, 0.0, 0.0, 1.0]),
    ("d5", {"source": "faq"}, [1.0, 1.0, 1.0, 1.0]),
]

CHAINS = [[("s05", 4, 6, False), ("s10", 6, 7, True)]]


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def detok(words):
    out = ""
    for w in words:
        if out and not (w in {".", ",", ":", ";", "!", "?", ")"} or w in {"n't", "'s"}):
            out += " "
        out += w
    return out


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out = os.path.join(here, "sample")
    os.makedirs(out, exist_ok=True)

    statements = []
    by_doc = {}
    for sid, doc, tokens, frames in STATEMENTS:
        toks = [{"deprel": d, "head": h, "index": i, "is_stopword": t.lower() in STOP, "lemma": l, "pos": p, "text": t}
                for i, (t, l, p, h, d) in enumerate(tokens)]
        frs = [{"predicate": p, "roles": [[lab, s, e] for lab, s, e in roles]} for p, roles in frames]
        statements.append({"frames": frs, "id": sid, "source_doc": doc, "tokens": toks})
        by_doc.setdefault(doc, []).append(detok([t[0] for t in tokens]))

    docs = [{"embedding": emb, "id": did, "metadata": meta, "text": " ".join(by_doc.get(did, ["Frequently asked questions."]))}
            for did, meta, emb in DOCS]
    chains = [{"mentions": [{"end": e, "pronominal": p, "start": s, "statement_id": sid} for sid, s, e, p in chain]}
              for chain in CHAINS]
    meta = {"counts": {"chains": len(chains), "docs": len(docs), "statements": len(statements)},
            "embedding_dim": 4, "name": "sample"}

    def write(name, lines):
        with open(os.path.join(out, name), "w", encoding="utf-8") as f:
            for line in lines:
                f.write(canonical(line) + "\n")

    write("corpus.meta", [meta])
    write("docs.jsonl", docs)
    write("statements.jsonl", statements)
    write("chains.jsonl", chains)

    def constituent(c):
        return None if c is None else {"spans": c[0], "text": c[1]}

    with open(os.path.join(here, "sample_records.jsonl"), "w", encoding="utf-8") as f:
        for sid, (idx, lemma, text), attr, obj, deontic, modal, negated, category in EXPECTED:
            record = {"aim": {"index": idx, "lemma": lemma, "span": [idx, idx + 1], "text": text},
                      "attribute": constituent(attr), "category": category, "deontic": deontic,
                      "deontic_absent": deontic is None, "modal": modal, "negated": negated,
                      "object": constituent(obj), "statement_id": sid}
            f.write(canonical(record) + "\n")


if __name__ == "__main__":
    main()
