"""Brute-force steady-state loop used as an oracle for the engine.

No level table is kept: every deletion recounts level occupancy from the raw
fitness values, and the members of a level are ordered by birth. Random
draws are consumed in the same order as the engine, so with a shared seed the
two must agree event for event.
"""

import math
import random


def ref_level(f, f_min, f_max, levels):
    if f <= f_min:
        return 0
    if f >= f_max:
        return levels - 1
    return min(levels - 1, math.floor((f - f_min) * levels / (f_max - f_min)))


def _tournament(slots, k, rand):
    n = len(slots)
    picks = [int(rand() * n)]
    best = picks[0]
    ties = 1
    for _ in range(k - 1):
        c = int(rand() * n)
        if slots[c][2] > slots[best][2]:
            best, ties = c, 1
        elif slots[c][2] == slots[best][2]:
            ties += 1
            if int(rand() * ties) == 0:
                best = c
    return best


def reference_run(problem, scheme, capacity, initial_size, level_count, cycles, seed):
    """Return the list of per-cycle events ``(child_slot, deleted_slot, deleted_level, occupancy_before)``.

    ``occupancy_before`` is the brute-force level count at the moment of
    deletion (None during growth).
    """
    rng = random.Random(seed)
    rand = rng.random
    lo, hi = problem.f_min, problem.f_max
    slots = []  # (birth, genome, fitness)
    births = 0
    for _ in range(initial_size):
        g = problem.random_genome(rng)
        slots.append((births, g, problem.evaluate(g)))
        births += 1
    events = []
    k = scheme.k
    for _ in range(cycles):
        p1 = _tournament(slots, k, rand)
        if rand() < scheme.crossover_prob:
            p2 = _tournament(slots, k, rand)
            child = problem.crossover(slots[p1][1], slots[p2][1], rng)
            if rand() < scheme.mutation_prob:
                child = problem.mutate(child, rng)
        else:
            child = problem.mutate(slots[p1][1], rng)
        f = problem.evaluate(child)
        if len(slots) < capacity:
            slots.append((births, child, f))
            events.append((len(slots) - 1, None, None, None))
        else:
            lv = [ref_level(s[2], lo, hi, level_count) for s in slots]
            occ = [lv.count(i) for i in range(level_count)]
            if scheme.deletion == "fuds":
                target = occ.index(max(occ))
                members = sorted((s[0], i) for i, s in enumerate(slots) if lv[i] == target)
                victim = members[int(rand() * len(members))][1]
            else:
                victim = int(rand() * len(slots))
            events.append((victim, victim, lv[victim], occ))
            slots[victim] = (births, child, f)
        births += 1
    return events, slots
