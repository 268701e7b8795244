"""Escalation search for almost universal triangular sums with one exception.

A sum is a candidate for exception m when its unrepresented set up to the
bound is exactly {m}.  Candidates are proper when every drop-one sub-sum
misses at least two integers, daggers otherwise, stars when universal.
Nodes missing m plus something else are rejected and escalated further;
nodes that represent m are pruned.
"""

from dataclasses import dataclass

from .trisums import sieve, truants

CRITERION_SETS = {
    1: (2, 3, 4, 8, 10, 16, 19),
    2: (1, 4, 5, 7, 8, 9, 11, 16, 17, 20, 29, 35),
    4: (1, 2, 11, 14, 19, 25, 29, 46, 50),
    5: (1, 2, 8, 14, 26, 40, 41, 47, 59, 71),
    8: (1, 2, 5, 17, 89),
}

EXCEPTIONS = (1, 2, 4, 5, 8)


@dataclass(frozen=True)
class CandidateRecord:
    coeffs: tuple
    exception: int
    classification: str
    verified_bound: int
    conditional: bool = False
    witnesses: tuple = ()

    def to_dict(self):
        return {
            "coeffs": list(self.coeffs),
            "exception": self.exception,
            "classification": self.classification,
            "verified_bound": self.verified_bound,
            "conditional": self.conditional,
        }


def _missing_positive(coeffs, bound):
    return [n for n in sieve(coeffs, bound).missing() if n > 0]


def _sub_multisets(coeffs):
    subs = set()
    for i in range(len(coeffs)):
        subs.add(coeffs[:i] + coeffs[i + 1:])
    return sorted(subs)


def classify(coeffs, m, bound):
    """Classify one sum against exception m with representability checked
    up to bound."""
    if m not in EXCEPTIONS:
        raise ValueError("exception must be one of %s" % (EXCEPTIONS,))
    coeffs = tuple(sorted(coeffs))
    missing = _missing_positive(coeffs, bound)
    if not missing:
        return CandidateRecord(coeffs, m, "star", bound)
    if missing != [m]:
        return CandidateRecord(coeffs, m, "rejected", bound)
    witnesses = []
    proper = True
    for sub in _sub_multisets(coeffs):
        sub_missing = _missing_positive(sub, bound) if sub else [1, 2]
        if len(sub_missing) < 2:
            proper = False
            witnesses = []
            break
        witnesses.append((sub, tuple(sub_missing[:2])))
    label = "proper" if proper else "dagger"
    conditional = len(coeffs) == 3
    return CandidateRecord(coeffs, m, label, bound, conditional,
                           tuple(witnesses))


def escalate_tree(m, bound, max_k=8):
    """Breadth-first escalation; returns every visited node with its
    classification and whether it represents m (pruned)."""
    if m not in EXCEPTIONS:
        raise ValueError("exception must be one of %s" % (EXCEPTIONS,))
    nodes = []
    queue = [()]
    while queue:
        coeffs = queue.pop(0)
        if coeffs:
            sv = sieve(coeffs, bound)
            missing = [n for n in sv.missing() if n > 0]
            rep_m = sv.represents(m)
        else:
            missing = [1, 2]
            rep_m = False
        if not missing:
            record = classify(coeffs, m, bound)
            nodes.append(record)
            continue
        if missing == [m]:
            nodes.append(classify(coeffs, m, bound))
            continue
        nodes.append(CandidateRecord(coeffs, m, "rejected", bound))
        if rep_m:
            continue
        if len(coeffs) >= max_k:
            continue
        tr = truants(coeffs, 2, bound)
        if len(tr.truants) < 2 and tr.exhausted:
            raise RuntimeError(
                "truant search exhausted below bound for %s" % (coeffs,))
        t1, t2 = tr.truants[0], tr.truants[1]
        upper = t2 if t1 == m else t1
        lower = coeffs[-1] if coeffs else 1
        for alpha in range(lower, upper + 1):
            queue.append(coeffs + (alpha,))
    return nodes


def escalate(m, bound=10 ** 5, max_k=8):
    """All candidate records (proper, dagger, star) for exception m."""
    nodes = escalate_tree(m, bound, max_k)
    out = [r for r in nodes if r.classification in ("proper", "dagger", "star")]
    out.sort(key=lambda r: r.coeffs)
    return out


def summarize(records):
    """Counts by classification and, for propers, by arity."""
    counts = {"proper": 0, "dagger": 0, "star": 0}
    by_k = {}
    conditional = 0
    for r in records:
        counts[r.classification] += 1
        if r.classification == "proper":
            by_k[len(r.coeffs)] = by_k.get(len(r.coeffs), 0) + 1
            if r.conditional:
                conditional += 1
    return {"counts": counts, "proper_by_arity": by_k,
            "conditional": conditional}


def criterion_check(coeffs, m, bound=None):
    """The finite criterion: the sum represents the criterion set for m
    and misses m itself."""
    coeffs = tuple(sorted(coeffs))
    targets = CRITERION_SETS[m]
    need = max(max(targets), m)
    sv = sieve(coeffs, need if bound is None else max(bound, need))
    return all(sv.represents(t) for t in targets) and not sv.represents(m)


def tail_rule_check(m, prefix, bound):
    """Window pattern for deep extensions: classify every extension with
    the next coefficient in [last, last+m] and confirm none is proper or
    star."""
    prefix = tuple(sorted(prefix))
    if len(prefix) < 5:
        raise ValueError("prefix must have at least five coefficients")
    if sieve(prefix, max(bound, m)).represents(m):
        raise ValueError("prefix represents the exception; not an "
                         "escalation context")
    last = prefix[-1]
    extensions = {}
    ok = True
    for alpha in range(last, last + m + 1):
        rec = classify(prefix + (alpha,), m, bound)
        extensions[alpha] = rec.classification
        if rec.classification in ("proper", "star"):
            ok = False
    return {"prefix": prefix, "exception": m, "extensions": extensions,
            "ok": ok}
