#!/usr/bin/env python3
"""Regenerates tests/data/phonetic_reference.tsv from independent reference
implementations: jellyfish (Soundex, Metaphone, NYSIIS, MRA) and abydos
(Double Metaphone, original four-character limit).

    pip install jellyfish abydos
    python3 tests/oracles/phonetic_reference.py > tests/data/phonetic_reference.tsv
"""
import jellyfish
import warnings

warnings.filterwarnings("ignore")
from abydos.phonetic import DoubleMetaphone  # noqa: E402

NAMES = """
robert rupert abraham abrahan thomas thompson jean john johan johnny jon
smith schmidt ben anna ann hannah macdonald mcdonald byrne burns catherine
kathryn katherine caitlin christopher kristoff michael mikhail michelle
philip phillip filip stephen steven stefan joseph josef jose xavier zachary
george georgia giorgio jorge charles charlotte chandler ashcraft pfister
tymczak lloyd knight wright gwendolyn yvonne eve evelyn ignatius gnaeus
heather edward edwin eddie edgar elizabeth elisabeth isabel beatrice beatrix
beatriz caesar cesar chianti orchestra gough hugh laugh tagliaro biaggi
jaime jacinto rogier jaeger wagner zhao czerny tchaikovsky accardi bacchus
mcclellan campbell dumb thumb lamb bertha martha marhta sean shaun shawn
alfredo alfred aaron erin ciara sierra quentin quinn vaughn victoria
wolfgang walter whitney sophia sofia nikolai nicholas dmitri dimitri
giuseppe francesca ghislaine gerard lucas lukas maximilian yusuf jaqueline
cynthia scott schuyler hanna sasha sascha""".split()


def main():
    print("name\tsoundex\tmetaphone\tdm_primary\tdm_secondary\tnysiis\tmra")
    dm = DoubleMetaphone(max_length=4)
    for n in NAMES:
        p, s = dm.encode(n)
        if not s:
            s = p
        print("\t".join([n, jellyfish.soundex(n), jellyfish.metaphone(n), p, s,
                         jellyfish.nysiis(n), jellyfish.match_rating_codex(n)]))


if __name__ == "__main__":
    main()
