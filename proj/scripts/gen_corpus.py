#!/usr/bin/env python3
"""Regenerates tests/fixtures/corpus.conllu and corpus_dict.json.

The corpus is deterministic (pure round-robin over word lists, no RNG) so the
checked-in files never drift. Every sentence is a simple clause whose first
token is its subject, and no surface form repeats inside one sentence.
"""

import json
import pathlib

NAMES = ["Maria", "Viktor", "Amina", "Tomas", "Ingrid", "Rafael", "Yuki",
         "Priya", "Omar", "Lena"]
PLURALS = ["Workers", "Students", "Farmers", "Nurses", "Painters", "Drivers",
           "Teachers", "Sailors", "Bakers", "Miners"]
VERBS_PAST = ["praised", "mended", "carried", "painted", "lifted", "measured",
              "cleaned", "sorted", "packed", "weighed", "folded", "stacked",
              "counted", "labeled", "washed", "moved", "checked", "tied",
              "sharpened", "polished", "repaired", "opened", "closed", "sold"]
NOUNS = ["engine", "ladder", "basket", "kettle", "mirror", "carpet", "violin",
         "lantern", "bucket", "anchor", "hammer", "bottle", "ribbon", "saddle",
         "teapot", "candle", "barrel", "magnet", "shovel", "whistle"]
PLACES = ["yard", "cellar", "harbor", "garden", "attic", "market", "meadow",
          "stable", "kitchen", "tunnel"]
ADJS = ["shiny", "wooden", "narrow", "heavy", "quiet", "pale", "rusty",
        "smooth", "round", "sturdy", "faded", "crooked"]
ADVS = ["yesterday", "carefully", "slowly", "twice", "early", "gladly",
        "quietly", "often", "today", "calmly"]
DETS = ["the", "a", "this", "that"]
PRONOUNS = ["him", "her", "them", "us"]
SEASONS = ["winter", "summer", "autumn", "spring"]
PRED_ADJS = ["cold", "warm", "busy", "calm", "full", "loud"]
NUMBERS = ["two", "three", "four", "five", "six", "seven"]
MASS_NOUNS = ["pipes", "crates", "ropes", "tiles", "nets", "sacks", "planks",
              "bricks", "jars", "crops"]

PER_TEMPLATE = 30


def pick(lst, i):
    return lst[i % len(lst)]


def plural_noun(i):
    return pick(MASS_NOUNS, i)


def svo_modifiers(i):
    # "Maria praised the shiny engine yesterday ."
    words = [pick(NAMES, i), pick(VERBS_PAST, i), pick(DETS, i),
             pick(ADJS, i), pick(NOUNS, i), pick(ADVS, i), "."]
    rows = [(1, words[0], "PROPN", 2, "nsubj"),
            (2, words[1], "VERB", 0, "root"),
            (3, words[2], "DET", 5, "det"),
            (4, words[3], "ADJ", 5, "amod"),
            (5, words[4], "NOUN", 2, "obj"),
            (6, words[5], "ADV", 2, "advmod"),
            (7, words[6], "PUNCT", 2, "punct")]
    return rows


def svo_oblique(i):
    # "Workers mended pipes in the old yard ."
    words = [pick(PLURALS, i), pick(VERBS_PAST, i + 7), plural_noun(i),
             "in", pick(DETS, i + 1), pick(ADJS, i + 5), pick(PLACES, i), "."]
    rows = [(1, words[0], "NOUN", 2, "nsubj"),
            (2, words[1], "VERB", 0, "root"),
            (3, words[2], "NOUN", 2, "obj"),
            (4, words[3], "ADP", 7, "case"),
            (5, words[4], "DET", 7, "det"),
            (6, words[5], "ADJ", 7, "amod"),
            (7, words[6], "NOUN", 2, "obl"),
            (8, words[7], "PUNCT", 2, "punct")]
    return rows


def svoo(i):
    # "Viktor handed her a faded ribbon gladly ."
    words = [pick(NAMES, i + 3), pick(VERBS_PAST, i + 13), pick(PRONOUNS, i),
             pick(DETS, i + 2), pick(ADJS, i + 8), pick(NOUNS, i + 9),
             pick(ADVS, i + 4), "."]
    rows = [(1, words[0], "PROPN", 2, "nsubj"),
            (2, words[1], "VERB", 0, "root"),
            (3, words[2], "PRON", 2, "iobj"),
            (4, words[3], "DET", 6, "det"),
            (5, words[4], "ADJ", 6, "amod"),
            (6, words[5], "NOUN", 2, "obj"),
            (7, words[6], "ADV", 2, "advmod"),
            (8, words[7], "PUNCT", 2, "punct")]
    return rows


def copular(i):
    # "Harbors are quite busy in summer ."
    subject = pick(PLACES, i).capitalize() + "s"
    words = [subject, "are", "quite", pick(PRED_ADJS, i), "in",
             pick(SEASONS, i), "."]
    rows = [(1, words[0], "NOUN", 4, "nsubj"),
            (2, words[1], "AUX", 4, "cop"),
            (3, words[2], "ADV", 4, "advmod"),
            (4, words[3], "ADJ", 0, "root"),
            (5, words[4], "ADP", 6, "case"),
            (6, words[5], "NOUN", 4, "obl"),
            (7, words[6], "PUNCT", 4, "punct")]
    return rows


def svo_possessive(i):
    # "Students read her science books at night ."
    compound = pick(["science", "garden", "copper", "winter", "river",
                     "market"], i)
    head = pick(["books", "tools", "maps", "boots", "coats", "bells"], i)
    words = [pick(PLURALS, i + 5), pick(VERBS_PAST, i + 19),
             pick(["her", "his", "their", "our"], i), compound, head,
             "at", pick(["night", "dawn", "noon", "dusk"], i), "."]
    rows = [(1, words[0], "NOUN", 2, "nsubj"),
            (2, words[1], "VERB", 0, "root"),
            (3, words[2], "PRON", 5, "poss"),
            (4, words[3], "NOUN", 5, "compound"),
            (5, words[4], "NOUN", 2, "obj"),
            (6, words[5], "ADP", 7, "case"),
            (7, words[6], "NOUN", 2, "obl"),
            (8, words[7], "PUNCT", 2, "punct")]
    return rows


def negated(i):
    # "Farmers did not plant two crops there ."
    words = [pick(PLURALS, i + 2), "did", "not",
             pick(["plant", "sell", "stack", "load", "count", "move",
                   "wash", "tie"], i), pick(NUMBERS, i),
             plural_noun(i + 3), pick(["there", "outside", "upstairs",
                                       "nearby"], i), "."]
    rows = [(1, words[0], "NOUN", 4, "nsubj"),
            (2, words[1], "AUX", 4, "aux"),
            (3, words[2], "PART", 4, "neg"),
            (4, words[3], "VERB", 0, "root"),
            (5, words[4], "NUM", 6, "nummod"),
            (6, words[5], "NOUN", 4, "obj"),
            (7, words[6], "ADV", 4, "advmod"),
            (8, words[7], "PUNCT", 4, "punct")]
    return rows


TEMPLATES = [svo_modifiers, svo_oblique, svoo, copular, svo_possessive,
             negated]


def block(sent_id, rows):
    lines = [f"# sent_id = {sent_id}",
             "# text = " + " ".join(r[1] for r in rows)]
    for index, form, upos, head, deprel in rows:
        lines.append("\t".join([str(index), form, form.lower(), upos, "_",
                                "_", str(head), deprel, "_", "_"]))
    return "\n".join(lines) + "\n"


def main():
    fixtures = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    blocks = []
    vocab = set()
    n = 0
    for i in range(PER_TEMPLATE):
        for template in TEMPLATES:
            n += 1
            rows = template(i)
            forms = [r[1] for r in rows]
            assert len(set(forms)) == len(forms), (template.__name__, i, forms)
            blocks.append(block(f"c{n:03d}", rows))
            vocab.update(f for f in forms if f != ".")
    (fixtures / "corpus.conllu").write_text("\n".join(blocks), encoding="utf-8")
    mapping = {word: "x" + word for word in sorted(vocab)}
    (fixtures / "corpus_dict.json").write_text(
        json.dumps(mapping, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {n} sentences, {len(mapping)} dictionary entries")


if __name__ == "__main__":
    main()
