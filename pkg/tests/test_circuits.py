import random
from fractions import Fraction as F

import pytest

from phom.circuits import (
    Circuit,
    NotValidated,
    accepted_bitmap,
    circuit_prob,
    evaluate,
    parse_circuit,
    serialize_circuit,
    validate_ddnnf,
)


def single_var_circuit():
    c = Circuit()
    c.output = c.var("x")
    return c


class TestCircuitProb:
    def test_single_input(self):
        c = single_var_circuit()
        validate_ddnnf(c)
        assert circuit_prob(c, {"x": F(2, 5)}) == F(2, 5)

    def test_shannon_expansion_pair(self):
        c = Circuit()
        left = c.conj([c.var("x")])
        right = c.conj([c.nvar("x"), c.var("y")])
        c.output = c.disj([left, right])
        validate_ddnnf(c)
        assert circuit_prob(c, {"x": F(1, 2), "y": F(1, 2)}) == F(3, 4)

    def test_unvalidated_circuit_refused(self):
        c = single_var_circuit()
        with pytest.raises(NotValidated):
            circuit_prob(c, {"x": F(1, 2)})
        assert circuit_prob(c, {"x": F(1, 2)}, require_validated=False) == F(1, 2)


class TestValidate:
    def test_and_sharing_a_variable_is_not_decomposable(self):
        c = Circuit()
        x = c.var("x")
        c.output = c.conj([x, x])
        report = validate_ddnnf(c)
        assert not report.decomposable
        assert not report.valid

    def test_overlapping_or_is_not_deterministic(self):
        c = Circuit()
        c.output = c.disj([c.var("x"), c.var("y")])
        report = validate_ddnnf(c)
        assert report.decomposable
        assert report.deterministic is False

    def test_exclusive_or_passes(self):
        c = Circuit()
        c.output = c.disj([c.conj([c.var("x"), c.var("y")]),
                           c.conj([c.nvar("x"), c.var("z")])])
        report = validate_ddnnf(c)
        assert report.valid
        assert c.ddnnf_certified

    def test_certificate_used_above_exhaustive_cap(self):
        c = Circuit()
        kids = [c.conj([c.var(f"v{i}"), *(c.nvar(f"v{j}") for j in range(i))])
                for i in range(4)]
        c.output = c.disj(kids, certified=True)
        report = validate_ddnnf(c, exhaustive_cap=2)
        assert report.determinism_method == "certificate"
        assert report.valid


class TestEvaluationHelpers:
    def test_evaluate_matches_bitmap(self):
        rng = random.Random(0)
        for _ in range(50):
            c = Circuit()
            names = [f"v{i}" for i in range(rng.randint(1, 5))]
            pool = [c.var(n) for n in names] + [c.nvar(n) for n in names]
            for _ in range(rng.randint(1, 6)):
                kids = rng.sample(pool, rng.randint(1, min(3, len(pool))))
                gid = c.conj(kids) if rng.random() < 0.5 else c.disj(kids)
                pool.append(gid)
            c.output = pool[-1]
            bitmap = accepted_bitmap(c)
            for val in range(1 << len(c.var_names)):
                tv = {c.var_names[i] for i in range(len(c.var_names)) if val >> i & 1}
                assert evaluate(c, tv) == bool(bitmap >> val & 1)

    def test_constant_folding(self):
        c = Circuit()
        assert c.conj([c.true(), c.false()]) == c.false()
        assert c.disj([c.true(), c.var("x")]) == c.true()
        assert c.conj([]) == c.true()
        assert c.disj([]) == c.false()


class TestSerialization:
    def test_round_trip(self):
        c = Circuit()
        left = c.conj([c.var("a->b"), c.nvar("b->c")])
        right = c.conj([c.nvar("a->b"), c.var("b->c")])
        c.output = c.disj([left, right], certified=True)
        text = serialize_circuit(c)
        assert text.strip().splitlines()[-1] == str(c.output)
        back = parse_circuit(text)
        assert back.kinds == c.kinds
        assert back.children == c.children
        assert back.certified_or == c.certified_or
        assert back.output == c.output

    def test_probability_survives_round_trip(self):
        c = Circuit()
        c.output = c.disj(
            [c.conj([c.var("x")]), c.conj([c.nvar("x"), c.var("y")])]
        )
        validate_ddnnf(c)
        back = parse_circuit(serialize_circuit(c))
        validate_ddnnf(back)
        pi = {"x": F(1, 3), "y": F(2, 7)}
        assert circuit_prob(back, pi) == circuit_prob(c, pi)
