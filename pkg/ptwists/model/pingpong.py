"""
Twist words, ping-pong classification and certificate generation

A TwistContext binds the alphabet {P1, P1', P2, P2'} (P-twists over A) or
{T1, T1', T2, T2'} (spherical twists over B) to concrete descriptors, test
objects and the pair (S1, S2) used by the ping-pong sets

    X  = { Y : 2 hom*(S2, Y) > hom*(S1, S2) hom*(S1, Y) }
    X' = { Y : 2 hom*(S1, Y) > hom*(S2, S1) hom*(S2, Y) }

Words act left to right and every step is minimized. A WordEngine memoizes
by prefix so words sharing a prefix share the work; independent words of one
length can be farmed out to a process pool and are assembled in enumeration
order, so certificates do not depend on the worker count.

Classes:
    TwistWord: A word over the alphabet
    TwistContext: Scope, objects, descriptors and test set
    WordEngine: Prefix-memoized word application with a generator cap
    OrbitCache: Insert-if-absent store keyed by minimal-model invariants
    Classification: Result of classify

Functions:
    enumerate_reduced_words, apply_word, classify,
    certify_no_relations, certify_abelian, search_relations
"""

from __future__ import annotations

import logging
import multiprocessing as mp
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from ptwists.config.parameters import params
from ptwists.model.algebra import DgAlgebra
from ptwists.model.certificate import Certificate, profile_record, witness_digest
from ptwists.model.errors import ConfigurationError, ContractViolation, ResourceError, StructuralError
from ptwists.model.modules import (
    SemiFreeModule,
    free_algebra_module,
    free_module,
    hom_dims,
    is_quasi_isomorphic,
    shift,
)
from ptwists.model.spherify import SpherificationData, apply_F, build_spherification_algebra
from ptwists.model.twists import P_TWIST, SPHERICAL, HomProfile, TwistDescriptor, hom_profile
from ptwists.utils.serialize import algebra_from_dict, algebra_to_dict

logger = logging.getLogger(__name__)

P_ALPHABET = ("P1", "P1'", "P2", "P2'")
T_ALPHABET = ("T1", "T1'", "T2", "T2'")

REGION_X = "X"
REGION_X_PRIME = "X'"
REGION_NEITHER = "neither"


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def inverse_letter(letter):
    return letter[:-1] if letter.endswith("'") else f"{letter}'"


@dataclass(frozen=True)
class TwistWord:
    """
    Sequence of twist letters, applied left to right.

    Attributes:
        letters (tuple): Letters such as ('P1', "P2'")
    """

    letters: Tuple[str, ...] = ()

    @classmethod
    def parse(cls, text, alphabet=None):
        """Parse 'P1 P2\\' P1' (spaces or commas); validates against the alphabet."""
        letters = tuple(part for part in str(text).replace(",", " ").split() if part)
        allowed = alphabet or (P_ALPHABET + T_ALPHABET)
        for letter in letters:
            if letter not in allowed:
                raise ConfigurationError(f"unknown twist letter '{letter}'")
        return cls(letters)

    @classmethod
    def power(cls, letter, exponent):
        if exponent >= 0:
            return cls((letter,) * exponent)
        return cls((inverse_letter(letter),) * -exponent)

    @property
    def reduced(self):
        return all(b != inverse_letter(a) for a, b in zip(self.letters, self.letters[1:]))

    def inverse(self):
        return TwistWord(tuple(inverse_letter(a) for a in reversed(self.letters)))

    def __add__(self, other):
        return TwistWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(self.letters)


def enumerate_reduced_words(alphabet, max_length, include_empty=False) -> List[TwistWord]:
    """Reduced words by length, then lexicographically in alphabet order."""
    words = [TwistWord()] if include_empty else []
    level = [TwistWord()]
    for _ in range(max_length):
        level = [
            TwistWord(word.letters + (letter,))
            for word in level
            for letter in alphabet
            if not word.letters or letter != inverse_letter(word.letters[-1])
        ]
        words.extend(level)
    return words


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------

class TwistContext:
    """
    Objects and twist generators of one session.

    Scope 'A' twists along P_1, P_2 over A with t_1, t_2; scope 'B' twists
    along S_i = F P_i over the spherification. Classification always happens
    over B, so scope 'A' pushes orbit elements through F first.

    Attributes:
        algebra (DgAlgebra): Base algebra A
        scope (str): 'A' or 'B'
        spherification (SpherificationData): Built lazily when needed
        objects (dict): Label -> module in the working scope
        test_set (list): Test objects in the working scope
        alphabet (tuple): Letters of the scope
    """

    def __init__(self, algebra: DgAlgebra, scope="A", spherification: SpherificationData = None):
        if scope not in ("A", "B"):
            raise ConfigurationError(f"scope must be 'A' or 'B', got '{scope}'")
        if algebra.num_idempotents != 2:
            raise ConfigurationError("twist words need an algebra with two idempotents")
        self.algebra = algebra
        self.scope = scope
        self._spherification = spherification
        base_objects = {f"P{i + 1}": free_module(algebra, i) for i in range(2)}
        base_objects["A"] = free_algebra_module(algebra)
        self.base_objects = base_objects
        if scope == "A":
            self.alphabet = P_ALPHABET
            self.objects = base_objects
            self.descriptors = {}
            for i in range(2):
                desc = TwistDescriptor(P_TWIST, base_objects[f"P{i + 1}"], algebra.t_element(i),
                                       1, f"P{i + 1}")
                self.descriptors[desc.label] = desc
                self.descriptors[desc.inverse().label] = desc.inverse()
        else:
            if spherification is None:
                raise ConfigurationError("spherical scope needs the spherification to be built first")
            S = spherification
            self.alphabet = T_ALPHABET
            self.objects = {
                "S1": apply_F(S, base_objects["P1"]).renamed("S1"),
                "S2": apply_F(S, base_objects["P2"]).renamed("S2"),
                "B": apply_F(S, base_objects["A"]).renamed("B"),
            }
            self.descriptors = {}
            for i in range(2):
                desc = TwistDescriptor(SPHERICAL, self.objects[f"S{i + 1}"], None, 1, f"T{i + 1}")
                self.descriptors[desc.label] = desc
                self.descriptors[desc.inverse().label] = desc.inverse()
        self.test_set = [m.renamed(label) for label, m in self.objects.items()]
        self.objects = {m.name: m for m in self.test_set}

    @property
    def spherification(self) -> SpherificationData:
        if self._spherification is None:
            self._spherification = build_spherification_algebra(self.algebra)
        return self._spherification

    @property
    def sphere_pair(self):
        """(S1, S2) over B, the reference objects of the ping-pong sets."""
        S = self.spherification
        if self.scope == "B":
            return self.objects["S1"], self.objects["S2"]
        return (apply_F(S, self.objects["P1"]).renamed("S1"),
                apply_F(S, self.objects["P2"]).renamed("S2"))

    def to_sphere_side(self, Y: SemiFreeModule) -> SemiFreeModule:
        return Y if self.scope == "B" else apply_F(self.spherification, Y)

    def letter(self, index, exponent=1):
        base = self.alphabet[2 * index]
        return base if exponent > 0 else inverse_letter(base)

    def descriptor(self, letter) -> TwistDescriptor:
        try:
            return self.descriptors[letter]
        except KeyError:
            raise ConfigurationError(
                f"letter '{letter}' does not belong to scope {self.scope} ({' '.join(self.alphabet)})"
            ) from None

    def is_orthogonal(self):
        return not hom_dims(self.base_objects["P1"], self.base_objects["P2"]).items

    def shift_per_twist(self):
        """-(n+1)k + 2, the shift P_i(P_i) = P_i[...]."""
        n, k = self.algebra.params.get("n"), self.algebra.params.get("k")
        if n is None or k is None:
            raise ConfigurationError("algebra records no (n, k)")
        return -(n + 1) * k + 2


# ---------------------------------------------------------------------------
# Word application
# ---------------------------------------------------------------------------

@dataclass
class WordApplication:
    """Result of folding a word over a module."""

    word: TwistWord
    module: SemiFreeModule
    peak_generators: int


def apply_word(context: TwistContext, word: TwistWord, M: SemiFreeModule, max_generators=None):
    """
    Fold the word left to right over M, minimizing after every step.

    Raises:
        ResourceError: A step produced more generators than the cap
    """
    cap = params.max_generators if max_generators is None else max_generators
    current = M
    peak = M.rank
    for n, letter in enumerate(word.letters):
        current = context.descriptor(letter).apply(current)
        peak = max(peak, current.rank)
        if cap and current.rank > cap:
            raise ResourceError(word.letters[: n + 1], current.rank, cap)
    return WordApplication(word, current, peak)


class WordEngine:
    """
    Prefix-memoized word application on the context's named objects.

    Attributes:
        context (TwistContext): Session objects and letters
        max_generators (int): Cap per step
        memo (dict): (object label, letters) -> WordApplication
        applied (int): Count of twist steps computed in this process
    """

    def __init__(self, context: TwistContext, max_generators=None):
        self.context = context
        self.max_generators = params.max_generators if max_generators is None else max_generators
        self.memo: Dict[Tuple[str, Tuple[str, ...]], WordApplication] = {}
        self.applied = 0
        self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def log(self, message):
        """Log a message with the step counter prefix."""
        logger.info(f"[WORD {self.applied:04d}] {message}")

    def apply(self, word: TwistWord, label) -> WordApplication:
        key = (label, word.letters)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not word.letters:
            module = self.context.objects[label]
            result = WordApplication(word, module, module.rank)
        else:
            parent = self.apply(TwistWord(word.letters[:-1]), label)
            module = self.context.descriptor(word.letters[-1]).apply(parent.module)
            if self.max_generators and module.rank > self.max_generators:
                raise ResourceError(word.letters, module.rank, self.max_generators)
            result = WordApplication(word, module, max(parent.peak_generators, module.rank))
            self.applied += 1
        self.memo[key] = result
        return result

    def run_level(self, job, words, *args):
        """
        Run job(engine, word, *args) for every word; results keep word order.

        With more than one worker the words go to a spawned process pool. Each
        worker rebuilds the context from the serialized algebra and keeps its
        own memo for the life of the engine.
        """
        workers = max(1, int(params.workers or 1))
        if workers == 1 or len(words) < 2:
            return [job(self, word, *args) for word in words]
        if self._pool is None:
            self._pool = mp.get_context("spawn").Pool(
                processes=workers,
                initializer=_init_worker,
                initargs=(_worker_spec(self.context, self.max_generators),),
            )
            self.log(f"STARTED {workers} WORKERS")
        return self._pool.starmap(_run_in_worker, [(job, word, args) for word in words])

    def close(self):
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None


# ---------------------------------------------------------------------------
# Worker processes
# ---------------------------------------------------------------------------

_worker_engine = None


def _worker_spec(context: TwistContext, max_generators):
    """What a spawned worker needs to rebuild the context."""
    h_name = None
    if context.scope == "B":
        h = context.spherification.h
        h_name = next(name for name, element in context.algebra.marked.items() if element == h)
    return {
        "algebra": algebra_to_dict(context.algebra),
        "scope": context.scope,
        "h_name": h_name,
        "config": params.as_dict(),
        "max_generators": max_generators,
    }


def _init_worker(spec):
    global _worker_engine
    params.update(**spec["config"])
    params.workers = 1
    A = algebra_from_dict(spec["algebra"])
    spherification = build_spherification_algebra(A, spec["h_name"]) if spec["h_name"] else None
    _worker_engine = WordEngine(TwistContext(A, spec["scope"], spherification), spec["max_generators"])


def _run_in_worker(job, word, args):
    return job(_worker_engine, word, *args)


# ---------------------------------------------------------------------------
# Orbit cache
# ---------------------------------------------------------------------------

@dataclass
class OrbitEntry:
    module: SemiFreeModule
    profile: HomProfile
    payload: dict = field(default_factory=dict)


class OrbitCache:
    """
    Orbit elements keyed by (minimal generator multiset, hom profile).

    Key collisions are resolved by an explicit quasi-isomorphism witness, so
    a reused entry is always isomorphic to the queried module.
    Only the coordinating process touches the cache.
    """

    def __init__(self):
        self._entries: Dict[tuple, List[OrbitEntry]] = {}
        self.hits = 0

    def __len__(self):
        return sum(len(v) for v in self._entries.values())

    def insert_if_absent(self, module: SemiFreeModule, profile: HomProfile, payload=None):
        """
        Returns:
            tuple: (entry, inserted) where entry is isomorphic to module
        """
        key = (module.degree_multiset(), profile)
        for entry in self._entries.get(key, ()):
            if is_quasi_isomorphic(entry.module, module):
                self.hits += 1
                return entry, False
        entry = OrbitEntry(module, profile, dict(payload or {}))
        self._entries.setdefault(key, []).append(entry)
        return entry, True


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    """
    Attributes:
        region (str): 'X', "X'" or 'neither'
        hom_s1, hom_s2 (int): Total dims hom*(S1, Y), hom*(S2, Y)
        h12, h21 (int): hom*(S1, S2), hom*(S2, S1)
    """

    region: str
    hom_s1: int
    hom_s2: int
    h12: int
    h21: int

    def inequality(self):
        if self.region == REGION_X:
            return f"2*{self.hom_s2} > {self.h12}*{self.hom_s1}"
        if self.region == REGION_X_PRIME:
            return f"2*{self.hom_s1} > {self.h21}*{self.hom_s2}"
        return f"2*{self.hom_s2} <= {self.h12}*{self.hom_s1} and 2*{self.hom_s1} <= {self.h21}*{self.hom_s2}"

    def as_dict(self):
        return {"region": self.region, "hom_S1": self.hom_s1, "hom_S2": self.hom_s2,
                "inequality": self.inequality()}


def classify(Y: SemiFreeModule, S1: SemiFreeModule, S2: SemiFreeModule) -> Classification:
    """
    Place Y in X, X' or neither using exact integer inequalities.

    Raises:
        ContractViolation: Y satisfies both strict inequalities
    """
    h12 = hom_dims(S1, S2).total
    h21 = hom_dims(S2, S1).total
    if h12 < 2:
        logger.warning("hom*(S1, S2) = %d < 2: ping-pong classification is vacuous", h12)
    a = hom_dims(S1, Y).total
    b = hom_dims(S2, Y).total
    in_x = 2 * b > h12 * a
    in_x_prime = 2 * a > h21 * b
    if in_x and in_x_prime:
        raise ContractViolation(f"{Y.name} lies in both ping-pong sets (hom {a}, {b})")
    region = REGION_X if in_x else REGION_X_PRIME if in_x_prime else REGION_NEITHER
    return Classification(region, a, b, h12, h21)


# ---------------------------------------------------------------------------
# Certifiers
# ---------------------------------------------------------------------------

def _progress(total, desc):
    return tqdm(total=total, desc=desc, disable=not params.show_progress, leave=False)


def _algebra_record(A: DgAlgebra):
    return {
        "name": A.name,
        "n": A.params.get("n"),
        "k": A.params.get("k"),
        "m": A.params.get("m"),
        "field": A.field_name,
    }


def _distinguish(engine: WordEngine, word: TwistWord, base_profiles):
    """Record for one word: the first test object whose hom-profile it changes."""
    test_set = engine.context.test_set
    capped = []
    for G in test_set:
        try:
            app = engine.apply(word, G.name)
        except ResourceError as exc:
            capped.append(f"{G.name}: {exc}")
            continue
        after = hom_profile(app.module, test_set)
        before = base_profiles[G.name]
        if after != before:
            changed = next(label for label in before.labels if before[label] != after[label])
            return {
                "word": str(word),
                "object": G.name,
                "verdict": "distinguished",
                "profile_before": profile_record(before),
                "profile_after": profile_record(after),
                "inequality": f"hom*({changed}, -): {before[changed]} != {after[changed]}",
                "peak_generators": app.peak_generators,
            }
    reason = "; ".join(capped) if capped else "profiles unchanged on test set"
    return {"word": str(word), "verdict": "undetermined", "reason": reason}


def certify_no_relations(context: TwistContext, L, transition_exponent=None, engine=None) -> Certificate:
    """
    Freeness evidence up to word length L.

    (a) Every nonempty reduced word is distinguished from the identity by a
        hom-profile change on some test object. A test object that hits the
        generator cap is skipped; the word is undetermined only when no
        object distinguishes it.
    (b) Ping-pong transitions: on orbit elements of {S1, S2} under words of
        length <= L, powers of the first generator send X' into X and powers
        of the second send X into X', for exponents up to the bound.

    Raises:
        ConfigurationError: Orthogonal input (the twists commute there)
    """
    if context.is_orthogonal():
        raise ConfigurationError("certify free refuses orthogonal input: P_1 and P_2 commute there")
    bound = params.transition_exponent if transition_exponent is None else transition_exponent
    base_profiles = {G.name: hom_profile(G, context.test_set) for G in context.test_set}
    cert = Certificate(
        mode="free",
        algebra=_algebra_record(context.algebra),
        scope=context.scope,
        word_budget=L,
        seed=params.seed,
        config=params.as_dict(),
    )
    words = enumerate_reduced_words(context.alphabet, L)

    with (engine or WordEngine(context)) as engine, _progress(len(words), "words") as bar:
        for length in range(1, L + 1):
            level = [w for w in words if len(w) == length]
            for record in engine.run_level(_distinguish, level, base_profiles):
                cert.records.append(record)
                if record["verdict"] != "distinguished":
                    cert.undetermined.append(record["word"])
                bar.update(1)
            engine.log(f"LENGTH {length}: {len(level)} WORDS")
        _check_transitions(context, engine, cert, L, bound)
    logger.info(f"[CERT free] {cert.verdict.upper()}: {len(cert.records)} WORDS, {len(cert.transitions)} TRANSITIONS")
    return cert


def _check_transitions(context, engine, cert, L, bound):
    S1, S2 = context.sphere_pair
    cache = OrbitCache()
    orbit_words = enumerate_reduced_words(context.alphabet, L, include_empty=True)
    targets = {REGION_X_PRIME: (0, REGION_X), REGION_X: (1, REGION_X_PRIME)}
    for label in ("P1", "P2") if context.scope == "A" else ("S1", "S2"):
        for word in orbit_words:
            try:
                app = engine.apply(word, label)
            except ResourceError as exc:
                cert.undetermined.append(f"orbit {word or '<empty>'} . {label}: {exc}")
                continue
            Y = context.to_sphere_side(app.module)
            region = classify(Y, S1, S2)
            if region.region not in targets:
                continue
            profile = hom_profile(Y, [S1, S2])
            entry, inserted = cache.insert_if_absent(Y, profile, {"region": region.region})
            record = {
                "orbit_word": str(word),
                "object": label,
                "classification": region.as_dict(),
            }
            if not inserted:
                record["same_as"] = entry.payload.get("orbit")
                cert.transitions.append(record)
                continue
            entry.payload["orbit"] = f"{word} . {label}".strip()
            index, expected = targets[region.region]
            checks = []
            for exponent in [e for m in range(1, bound + 1) for e in (m, -m)]:
                power = TwistWord.power(context.letter(index), exponent)
                try:
                    moved = engine.apply(word + power, label)
                except ResourceError as exc:
                    cert.undetermined.append(f"transition {word + power} . {label}: {exc}")
                    continue
                landed = classify(context.to_sphere_side(moved.module), S1, S2)
                ok = landed.region == expected
                checks.append({"power": exponent, "landed": landed.as_dict(), "ok": ok})
                if not ok:
                    cert.failures.append(
                        f"transition {word + power} . {label} landed in {landed.region}, expected {expected}"
                    )
            record["checks"] = checks
            cert.transitions.append(record)
        engine.log(f"TRANSITIONS FROM {label}: {len(cache)} ORBIT CLASSES")


def certify_abelian(context: TwistContext, L, engine=None) -> Certificate:
    """
    Orthogonal regime: P_i(P_j) = P_j, P_i(P_i) = P_i[-(n+1)k+2], the
    commutator acts trivially on the test set, and P_1^a P_2^b != id for
    every (a, b) != (0, 0) with |a|, |b| <= L via the shift it induces.

    Raises:
        ConfigurationError: Non-orthogonal input or spherical scope
    """
    if context.scope != "A":
        raise ConfigurationError("certify abelian works with P-twists over A")
    if not context.is_orthogonal():
        raise ConfigurationError("certify abelian refuses non-orthogonal input (m >= 1)")
    engine = engine or WordEngine(context)
    n, k = context.algebra.params.get("n"), context.algebra.params.get("k")
    step = context.shift_per_twist()
    conclusive = not (n == 1 and k == 1)
    if not conclusive:
        logger.warning("(n, k) = (1, 1): orthogonal P-twists may satisfy extra relations; "
                       "certificate is non-conclusive")
    cert = Certificate(
        mode="abelian",
        algebra=_algebra_record(context.algebra),
        scope="A",
        word_budget=L,
        seed=params.seed,
        config=params.as_dict(),
        conclusive=conclusive,
    )
    cert.summary["shift_per_twist"] = step

    def record_iso(kind, word, label, expected: SemiFreeModule):
        app = engine.apply(word, label)
        result = is_quasi_isomorphic(app.module, expected)
        record = {
            "check": kind,
            "word": str(word),
            "object": label,
            "expected": expected.name,
            "verdict": result.status,
            "witness": witness_digest(result),
        }
        cert.records.append(record)
        if result.status == "distinct":
            cert.failures.append(f"{kind}: {word} . {label} is not {expected.name}")
        elif result.status != "witnessed":
            cert.undetermined.append(f"{kind}: {word} . {label}")
        return result

    objects = context.objects
    for i, j in product(range(2), repeat=2):
        word = TwistWord((f"P{i + 1}",))
        label = f"P{j + 1}"
        if i == j:
            record_iso("self-shift", word, label, shift(objects[label], step).renamed(f"{label}[{step}]"))
        else:
            record_iso("orthogonal-fixed", word, label, objects[label])

    commutator = TwistWord(("P1", "P2", "P1'", "P2'"))
    for G in context.test_set:
        record_iso("commutator", commutator, G.name, G)

    for a, b in product(range(-L, L + 1), repeat=2):
        if (a, b) == (0, 0):
            continue
        word = TwistWord.power("P1", a) + TwistWord.power("P2", b)
        index, power = (0, a) if a else (1, b)
        label = f"P{index + 1}"
        total = power * step
        result = record_iso("shift-witness", word, label,
                            shift(objects[label], total).renamed(f"{label}[{total}]"))
        if result and total == 0:
            cert.undetermined.append(f"shift-witness: {word} acts with zero shift on {label}")
    engine.log(f"ABELIAN GRID |a|, |b| <= {L}: {len(cert.records)} CHECKS")
    logger.info(f"[CERT abelian] {cert.verdict.upper()}: shift per twist {step}")
    return cert


@dataclass
class RelationSearch:
    """Candidate relations (witnessed identity on every test object) and undetermined words."""

    candidates: List[TwistWord] = field(default_factory=list)
    undetermined: List[TwistWord] = field(default_factory=list)
    certificate: Optional[Certificate] = None


def _relation_status(engine: WordEngine, word: TwistWord, labels):
    """(word, 'candidate' | 'nontrivial' | 'undetermined', object label or None)."""
    verdicts, capped = [], None
    for label in labels:
        try:
            app = engine.apply(word, label)
        except ResourceError:
            capped = capped or label
            continue
        result = is_quasi_isomorphic(app.module, engine.context.objects[label])
        if result.status == "distinct":
            return word, "nontrivial", label
        verdicts.append(result.status)
    if capped:
        return word, "undetermined", capped
    status = "candidate" if all(v == "witnessed" for v in verdicts) else "undetermined"
    return word, status, None


def search_relations(context: TwistContext, L, test_set=None, engine=None) -> RelationSearch:
    """
    Search reduced words up to length L for relations.

    A word is a candidate only when it is a witnessed identity on every test
    object; a profile change rules it out; anything else is undetermined.
    """
    labels = [G.name for G in (test_set or context.test_set)]
    for label in labels:
        if label not in context.objects:
            raise StructuralError(f"test object '{label}' is not a named object of the context")
    search = RelationSearch()
    cert = Certificate(
        mode="relations-search",
        algebra=_algebra_record(context.algebra),
        scope=context.scope,
        word_budget=L,
        seed=params.seed,
        config=params.as_dict(),
    )

    with (engine or WordEngine(context)) as engine:
        for length in range(1, L + 1):
            level = enumerate_reduced_words(context.alphabet, length)
            level = [w for w in level if len(w) == length]
            for word, status, label in engine.run_level(_relation_status, level, labels):
                record = {"word": str(word), "verdict": status}
                if label:
                    record["object"] = label
                cert.records.append(record)
                if status == "candidate":
                    search.candidates.append(word)
                elif status == "undetermined":
                    search.undetermined.append(word)
                    cert.undetermined.append(str(word))
    cert.summary["candidates"] = [str(w) for w in search.candidates]
    logger.info(f"[CERT relations-search] {len(search.candidates)} CANDIDATES, {len(search.undetermined)} UNDETERMINED")
    search.certificate = cert
    return search
