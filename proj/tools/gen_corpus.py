#!/usr/bin/env python3
"""Writes the shipped corpus: classical knots from braid closures and a few
virtual codes, each annotated with values computed by the library."""

import argparse
import random
import sys

import vmeander as vm


def closure(strands, word, conv):
    """Gauss code of the closure of a braid word, or None when the closure
    has more than one component. Generator +a is sigma_a, -a its inverse."""
    records = []
    seen = [0] * len(word)
    pos = 0
    for _ in range(strands):
        for k, g in enumerate(word):
            a = abs(g) - 1
            if pos not in (a, a + 1):
                continue
            from_left = pos == a
            positive = g > 0
            over = from_left == positive
            sign = (1 if positive else -1) * conv
            records.append(f"{'O' if over else 'U'}{k + 1}{'+' if sign > 0 else '-'}")
            seen[k] += 1
            pos = a + 1 if from_left else a
        if pos == 0:
            break
    if any(s != 2 for s in seen):
        return None
    return vm.GaussCode("".join(records)).relabeled()


def planar_closure(strands, word):
    for conv in (1, -1):
        c = closure(strands, word, conv)
        if c is not None and vm.carter_genus(c) == 0:
            return c
    return None


def annotations(code):
    fields = {
        "chords": code.chord_count,
        "writhe": vm.writhe(code),
        "odd_writhe": vm.odd_writhe(code),
        "genus": vm.carter_genus(code),
        "min_arcs": vm.min_arc_number(code)["min_arcs"],
        "reduced": "yes" if vm.is_reduced(code) else "no",
    }
    if code.chord_count <= 12:
        fields["fpoly"] = vm.f_polynomial(code, 14).replace(" ", ",")
    return " ".join(f"{k}={v}" for k, v in fields.items())


NAMED_BRAIDS = {
    "4_1": (3, [1, -2, 1, -2]),
    "5_2": (3, [1, 1, 1, 2, -1, 2]),
    "6_2": (3, [1, 1, 1, -2, 1, -2]),
    "6_3": (3, [1, 1, -2, 1, -2, -2]),
    "7_7": (4, [1, -2, 1, -2, 3, -2, 3]),
    "8_20": (3, [1, 1, 1, -2, -1, -1, -1, -2]),
}

VIRTUAL = {
    "virtual_trefoil": "O1-O2-U1-U2-",
    "virtual_3_1": "O1+U2+O3+O2+U1+U3+",
    "kishino_half": "O1-U2-O3+U1-O2-U3+",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--random", type=int, default=40, help="random braid closures")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    lines = ["# name code key=value ...", "# generated by tools/gen_corpus.py"]
    seen = set()

    def emit(name, code):
        key = str(code.normalized())
        if key in seen:
            return
        seen.add(key)
        lines.append(f"{name} {code if code.chord_count else '-'} {annotations(code)}")

    emit("unknot", vm.GaussCode(""))
    for n in range(3, 12, 2):
        emit(f"torus_2_{n}", planar_closure(2, [1] * n))
    for name, (s, w) in NAMED_BRAIDS.items():
        c = planar_closure(s, w)
        if c is not None:
            emit(name, c)
    for name, text in VIRTUAL.items():
        c = vm.GaussCode(text)
        emit(name, c)

    vt = vm.GaussCode(VIRTUAL["virtual_trefoil"])
    lines.append(f"entry virtual_trefoil_map {annotations(vt)}")
    lines.append(vm.Diagram.from_gauss(vt).serialize().rstrip("\n"))
    lines.append("end")

    rng = random.Random(args.seed)
    made = 0
    tries = 0
    while made < args.random and tries < 200000:
        tries += 1
        s = rng.randint(2, 4)
        m = rng.randint(7, 12)
        w = [rng.randint(1, s - 1) * rng.choice((1, -1)) for _ in range(m)]
        c = planar_closure(s, w)
        if c is None or not vm.is_reduced(c) or c.chord_count < 7:
            continue
        made += 1
        emit(f"braid_{made:02d}", c)

    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as f:
            f.write(text)


if __name__ == "__main__":
    main()
