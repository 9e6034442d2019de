#!/usr/bin/env python3
"""Builds the 100-sentence BLEU fixture (bleu100.hyp / bleu100.ref).

References are random sentences of 8..25 tokens; hypotheses are noisy copies
(15% substitutions, 5% deletions, 5% insertions) so every n-gram order has
matches. Hypotheses keep a minimum length of 4 tokens. Fixed seed.
"""
import random

rng = random.Random(20240601)
VOCAB = [f"w{i}" for i in range(120)]


def noisy_copy(ref):
    hyp = []
    for tok in ref:
        roll = rng.random()
        if roll < 0.05:
            continue  # delete
        if roll < 0.20:
            hyp.append(rng.choice(VOCAB))  # substitute
        else:
            hyp.append(tok)
        if rng.random() < 0.05:
            hyp.append(rng.choice(VOCAB))  # insert
    while len(hyp) < 4:
        hyp.append(rng.choice(VOCAB))
    return hyp


def main():
    with open("bleu100.ref", "w", encoding="utf-8") as ref_out, \
         open("bleu100.hyp", "w", encoding="utf-8") as hyp_out:
        for _ in range(100):
            ref = [rng.choice(VOCAB) for _ in range(rng.randint(8, 25))]
            ref_out.write(" ".join(ref) + "\n")
            hyp_out.write(" ".join(noisy_copy(ref)) + "\n")


if __name__ == "__main__":
    main()
