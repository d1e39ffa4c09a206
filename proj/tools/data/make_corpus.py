#!/usr/bin/env python3
"""Writes the ~1k sentence corpus behind the fake bigram language model.

Sentences are drawn from fixed templates with a seeded generator so the
committed file can be regenerated byte for byte.
"""
import random
import sys

SUBJECTS = ["the man", "the woman", "a child", "the dog", "the cat", "my neighbor", "the driver",
            "the family", "a surfer", "the baker", "the old man", "the kids", "everyone", "the adults",
            "my friend", "the teacher", "a tourist", "the cook", "the rider", "the crowd"]
VERBS = ["watched", "found", "cleaned", "carried", "dropped", "painted", "fixed", "loved", "hated",
         "ignored", "bought", "sold", "washed", "opened", "closed", "chased", "visited", "left",
         "remembered", "forgot"]
OBJECTS = ["the umbrella", "the car", "the bananas", "the tree", "the bed", "the oven", "the kitchen",
           "the keyboard", "the bicycle", "the cake", "the candles", "the beach", "the surfboard",
           "the wave", "the ocean", "the city", "the highway", "the truck", "the bus", "the chair",
           "the snow", "the sink", "the table", "the door", "the street", "the window", "the garden",
           "the laptop", "the sheets", "the alarm"]
PLACES = ["in the city", "at the beach", "in the kitchen", "on the highway", "in the snow",
          "near the tree", "in the ocean", "on the bed", "at the party", "in the rain",
          "on the street", "at home", "in the garden", "by the window", "at the table"]
ADJS = ["good", "bad", "rainy", "sunny", "lovely", "old", "new", "dirty", "clean", "happy", "sad",
        "wet", "dry", "dark", "bright", "busy", "quiet", "cold", "warm", "green", "ripe", "broken",
        "beautiful", "ugly", "terrible", "wonderful", "lazy", "poor", "rich"]
NOUNS = ["day", "morning", "evening", "week", "party", "trip", "ride", "meal", "summer", "winter"]
CONSEQ = ["get wet", "catch a cold", "crash", "fall down", "fall into the water", "rot",
          "ruin the sheets", "need a bath", "burn the food", "start a fire", "be late",
          "honk the horn", "get eaten", "set off the alarm", "get sunburned", "lose the sandals",
          "type gibberish", "break the laptop", "rust", "freeze"]

TEMPLATES = [
    lambda r: f"{r.choice(SUBJECTS)} {r.choice(VERBS)} {r.choice(OBJECTS)} {r.choice(PLACES)}",
    lambda r: f"it was a {r.choice(ADJS)} {r.choice(NOUNS)} {r.choice(PLACES)}",
    lambda r: f"{r.choice(SUBJECTS)} will {r.choice(CONSEQ)} if nobody watches {r.choice(OBJECTS)}",
    lambda r: f"what a {r.choice(ADJS)} {r.choice(NOUNS)} for {r.choice(OBJECTS)}",
    lambda r: f"{r.choice(SUBJECTS)} is convinced {r.choice(OBJECTS)} will {r.choice(CONSEQ)}",
    lambda r: f"of course nothing could go wrong with {r.choice(OBJECTS)}",
    lambda r: f"i just love how {r.choice(OBJECTS)} always ends with a {r.choice(NOUNS)}",
    lambda r: f"{r.choice(SUBJECTS)} can not wait to see {r.choice(OBJECTS)} again",
    lambda r: f"a {r.choice(ADJS)} {r.choice(OBJECTS).split()[1]} {r.choice(PLACES)}",
    lambda r: f"{r.choice(SUBJECTS)} said the {r.choice(NOUNS)} was {r.choice(ADJS)}",
]


def main(out_path):
    r = random.Random(20230524)
    seen = set()
    lines = []
    while len(lines) < 1000:
        s = r.choice(TEMPLATES)(r)
        if s in seen:
            continue
        seen.add(s)
        lines.append(s)
    with open(out_path, "w") as f:
        f.write("# one lowercase sentence per line\n")
        for s in lines:
            f.write(s + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpus/mini_corpus.txt")
