#!/usr/bin/env python3
"""Generate the frozen 1,000-headline fixture corpus.

Five latent themes with disjoint word pools, plus stopword-ish glue and
digits/punctuation so headlines exercise the whole tokenizer. The output
CSV is committed at tests/fixtures/headlines_1000.csv; rerunning this
script reproduces it byte for byte.
"""

import csv
import random
from pathlib import Path

THEMES = {
    "economy": [
        "market", "stocks", "inflation", "jobs", "economy", "trade",
        "prices", "wages", "budget", "taxes", "growth", "recession",
        "investors", "banks", "earnings", "dollar", "exports", "tariffs",
        "deficit", "retail",
    ],
    "health": [
        "virus", "vaccine", "hospital", "doctors", "outbreak", "masks",
        "pandemic", "treatment", "patients", "symptoms", "testing",
        "clinic", "immunity", "infection", "disease", "nurses",
        "quarantine", "medicine", "surgery", "recovery",
    ],
    "sports": [
        "team", "season", "players", "coach", "championship", "victory",
        "tournament", "league", "finals", "injury", "stadium", "fans",
        "record", "match", "goals", "playoffs", "draft", "contract",
        "winners", "defeat",
    ],
    "politics": [
        "election", "senate", "congress", "governor", "campaign", "votes",
        "policy", "debate", "president", "legislation", "candidate",
        "parliament", "minister", "coalition", "reform", "ballot",
        "poll", "veto", "lawmakers", "treaty",
    ],
    "climate": [
        "climate", "wildfire", "flood", "drought", "storm", "emissions",
        "temperature", "rainfall", "hurricane", "coastline", "glaciers",
        "renewable", "solar", "carbon", "forecast", "heatwave", "erosion",
        "conservation", "habitat", "wildlife",
    ],
}

GLUE = ["the", "of", "in", "after", "over", "amid", "as", "new", "says",
        "to", "for", "on", "with", "during"]

ROWS = 1000
SEED = 20260809


def make_headline(rng: random.Random, pool: list[str]) -> str:
    words = rng.sample(pool, rng.randint(4, 6))
    for _ in range(rng.randint(1, 3)):
        words.insert(rng.randrange(len(words) + 1), rng.choice(GLUE))
    if rng.random() < 0.15:
        words.insert(rng.randrange(len(words) + 1), str(rng.randint(2, 2026)))
    text = " ".join(words)
    text = text[0].upper() + text[1:]
    if rng.random() < 0.2:
        text += rng.choice([".", "!", "?"])
    if rng.random() < 0.1:
        text = text.replace(" ", "-", 1)
    return text


def main() -> None:
    rng = random.Random(SEED)
    theme_names = sorted(THEMES)
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "headlines_1000.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["Example"])
        for i in range(ROWS):
            theme = theme_names[i % len(theme_names)]
            writer.writerow([make_headline(rng, THEMES[theme])])
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
