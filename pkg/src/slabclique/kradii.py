"""Maximum clique in a disk graph with k distinct radii.

Enumerates, per radius class, every ordered pair of same-type centers (or no
pair at all, when the class is guessed absent from the optimum), solves each
guess through the cobipartite engine, and keeps the best clique under a
deterministic (size, ids) order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from typing import Iterable, Iterator, Sequence

from .cobipartite import CliqueResult, Guess, GuessSlot, PreparedDisks, solve_sides
from .errors import BudgetExceededError, ValidationError
from .geometry import Disk

DEFAULT_BUDGET = 10**8


def count_guess_products(class_sizes: Iterable[int]) -> int:
    """Closed-form number of slot products, all-absent excluded, pre-pruning."""
    total = 1
    for n in class_sizes:
        total *= 1 + n + n * (n - 1) // 2
    return total - 1


def _slot_options(prep: PreparedDisks, type_index: int, validate: bool) -> list:
    """Options for one class: None (absent) plus each ordered center pair."""
    members = prep.by_class[type_index]
    options: list = [None]
    for i, da in enumerate(members):
        for db in members[i:]:
            if validate and db.id not in prep.neighbors[da.id]:
                continue  # guessed extremes must themselves be adjacent
            options.append(GuessSlot(type_index, None, da.id, db.id))
    return options


def _enumerate(prep: PreparedDisks, validate: bool) -> Iterator[Guess]:
    type_indices = sorted(prep.by_class)
    options = [_slot_options(prep, t, validate) for t in type_indices]

    def extend(level: int, chosen: list, members: list) -> Iterator[Guess]:
        if level == len(options):
            if chosen:
                yield Guess(tuple(chosen))
            return
        for opt in options[level]:
            if opt is None:
                yield from extend(level + 1, chosen, members)
                continue
            new = [v for v in (opt.a, opt.b) if v not in members]
            if validate:
                ok = True
                for u in new:
                    nbrs = prep.neighbors[u]
                    if any(m not in nbrs for m in members):
                        ok = False
                        break
                if not ok:
                    continue
            yield from extend(level + 1, chosen + [opt], members + new)

    return extend(0, [], [])


def enumerate_guesses(disks: Sequence[Disk], validate: bool = True) -> Iterator[Guess]:
    """Stream every admissible guess for a disk instance.

    With validate=True, pairs whose endpoints cannot coexist in one clique are
    pruned as early as possible; with validate=False the raw slot product
    (minus the all-absent combination) is produced, matching
    count_guess_products.
    """
    return _enumerate(PreparedDisks(disks), validate)


def _solve_prepared(prep: PreparedDisks, guess: Guess) -> CliqueResult:
    xs, ys = prep.assemble(guess)
    return solve_sides(xs, ys, prep.neighbors, guess)


def _best_of(a: CliqueResult | None, b: CliqueResult | None) -> CliqueResult | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if a.sort_key() <= b.sort_key() else b


_WORKER_PREP: PreparedDisks | None = None


def _init_worker(disks) -> None:
    global _WORKER_PREP
    _WORKER_PREP = PreparedDisks(disks)


def _solve_batch(guesses) -> CliqueResult | None:
    best = None
    for guess in guesses:
        best = _best_of(best, _solve_prepared(_WORKER_PREP, guess))
    return best


def _chunks(iterator: Iterator, size: int) -> Iterator[list]:
    while True:
        block = list(itertools.islice(iterator, size))
        if not block:
            return
        yield block


def _reduce_parallel(disks, guesses: Iterator[Guess], workers: int) -> CliqueResult | None:
    best = None
    window = workers * 4
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(list(disks),)
    ) as pool:
        pending: set = set()
        for batch in _chunks(guesses, 128):
            while len(pending) >= window:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    best = _best_of(best, fut.result())
            pending.add(pool.submit(_solve_batch, batch))
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                best = _best_of(best, fut.result())
    return best


def check_budget(class_sizes: Iterable[int], budget: int | None) -> int:
    """Estimate the guess count and refuse instances beyond the budget."""
    total = count_guess_products(class_sizes)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"estimated {total} guesses exceeds budget {budget}; "
            "raise --budget to proceed anyway"
        )
    return total


def max_clique_kradii(
    disks: Sequence[Disk],
    budget: int | None = DEFAULT_BUDGET,
    workers: int = 1,
) -> CliqueResult:
    """Maximum clique of a k-radii disk instance, with a verified witness.

    Ties between guesses break toward the lexicographically smallest sorted
    id list, so reruns and parallel runs agree bit-for-bit.
    """
    prep = PreparedDisks(disks)
    check_budget((len(v) for v in prep.by_class.values()), budget)
    guesses = _enumerate(prep, validate=True)
    if workers > 1:
        best = _reduce_parallel(disks, guesses, workers)
    else:
        best = None
        for guess in guesses:
            best = _best_of(best, _solve_prepared(prep, guess))
    if best is None:
        raise ValidationError("no admissible guess; empty instance?")
    return best
