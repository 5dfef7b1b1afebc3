import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from besearch import (
    AndOrTree,
    GATE_AND,
    GATE_OR,
    dump_tree,
    evaluate_classical,
    evaluate_quantum_cost,
    evaluate_quantum_sim,
    load_tree,
    parse_tree,
)


def reduce_oracle(tree: AndOrTree, bits) -> int:
    """Independent bottom-up evaluator: reduce the leaf array level by
    level, alternating gates upward from the deepest level."""
    values = [int(b) for b in bits]
    gates = []
    gate = tree.root_gate
    for _ in tree.fanouts:
        gates.append(gate)
        gate = GATE_AND if gate == GATE_OR else GATE_OR
    for level in range(tree.depth - 1, -1, -1):
        fan = tree.fanouts[level]
        gate = gates[level]
        grouped = [values[i : i + fan] for i in range(0, len(values), fan)]
        if gate == GATE_OR:
            values = [int(any(g)) for g in grouped]
        else:
            values = [int(all(g)) for g in grouped]
    assert len(values) == 1
    return values[0]


@st.composite
def small_trees(draw):
    depth = draw(st.integers(0, 3))
    fanouts = tuple(draw(st.integers(1, 3)) for _ in range(depth))
    gate = draw(st.sampled_from([GATE_OR, GATE_AND]))
    tree = AndOrTree(depth, fanouts, gate)
    bits = draw(
        st.lists(st.integers(0, 1), min_size=tree.n_leaves, max_size=tree.n_leaves)
    )
    return tree, bits


class TestClassical:
    def test_flat_or(self):
        tree = AndOrTree(1, (4,), GATE_OR)
        assert evaluate_classical(tree, [1, 0, 0, 0]) == 1
        assert evaluate_classical(tree, [0, 0, 0, 0]) == 0

    def test_two_level_all_ones(self):
        tree = AndOrTree(2, (3, 3), GATE_OR)
        assert evaluate_classical(tree, [1] * 9) == 1

    def test_depth_zero_is_variable(self):
        tree = AndOrTree(0, (), GATE_OR)
        assert evaluate_classical(tree, [1]) == 1
        assert evaluate_classical(tree, [0]) == 0

    def test_size_mismatch(self):
        tree = AndOrTree(1, (4,), GATE_OR)
        with pytest.raises(ValueError):
            evaluate_classical(tree, [1, 0])
        with pytest.raises(ValueError):
            evaluate_classical(tree, [2, 0, 0, 0])

    def test_three_level_exhaustive_vs_oracle(self):
        tree = AndOrTree(3, (2, 2, 2), GATE_OR)
        for bits in itertools.product((0, 1), repeat=8):
            assert evaluate_classical(tree, bits) == reduce_oracle(tree, bits)

    def test_two_level_sixteen_leaves_exhaustive(self):
        tree = AndOrTree(2, (4, 4), GATE_AND)
        for packed in range(2**16):
            bits = [(packed >> i) & 1 for i in range(16)]
            assert evaluate_classical(tree, bits) == reduce_oracle(tree, bits)

    @given(small_trees())
    @settings(max_examples=150)
    def test_random_trees_vs_oracle(self, tree_bits):
        tree, bits = tree_bits
        assert evaluate_classical(tree, bits) == reduce_oracle(tree, bits)


class TestQuantumSim:
    def test_depth_zero_exact(self):
        tree = AndOrTree(0, (), GATE_OR)
        assert evaluate_quantum_sim(tree, [1], seed=0) == 1

    def test_depth_one_bounded_error(self):
        # one draw of the 9/10 promise box: deterministic with fixed
        # seeds, empirical rate ~0.9 (898/1000 at these seeds)
        tree = AndOrTree(1, (8,), GATE_OR)
        bits = [0, 0, 0, 1, 0, 0, 0, 0]
        agree = sum(
            evaluate_quantum_sim(tree, bits, seed) == 1 for seed in range(1000)
        )
        assert agree >= 870

    def test_single_witness_block(self):
        tree = AndOrTree(2, (9, 9), GATE_OR)
        bits = [0] * 81
        for i in range(9):
            bits[2 * 9 + i] = 1
        assert evaluate_classical(tree, bits) == 1
        agree = sum(evaluate_quantum_sim(tree, bits, seed) == 1 for seed in range(200))
        assert agree >= 180

    def test_all_zeros(self):
        tree = AndOrTree(2, (9, 9), GATE_OR)
        agree = sum(
            evaluate_quantum_sim(tree, [0] * 81, seed) == 0 for seed in range(200)
        )
        assert agree >= 180

    def test_and_root_via_de_morgan(self):
        tree = AndOrTree(2, (4, 4), GATE_AND)
        all_ones = [1] * 16
        one_zero_block = [1] * 16
        one_zero_block[4:8] = [0, 0, 0, 0]  # second OR child becomes 0
        assert evaluate_classical(tree, all_ones) == 1
        assert evaluate_classical(tree, one_zero_block) == 0
        hits1 = sum(
            evaluate_quantum_sim(tree, all_ones, seed) == 1 for seed in range(100)
        )
        hits0 = sum(
            evaluate_quantum_sim(tree, one_zero_block, seed) == 0 for seed in range(100)
        )
        assert hits1 >= 90 and hits0 >= 90

    def test_depth_three(self):
        rng = np.random.default_rng(5)
        tree = AndOrTree(3, (9, 9, 9), GATE_AND)
        bits = [int(b) for b in rng.integers(0, 2, size=729)]
        truth = evaluate_classical(tree, bits)
        agree = sum(
            evaluate_quantum_sim(tree, bits, seed) == truth for seed in range(100)
        )
        assert agree >= 90


class TestQuantumCost:
    def test_depth_zero_single_query(self):
        assert evaluate_quantum_cost(AndOrTree(0, (), GATE_OR)) == 1

    def test_depth_one_grover_model(self):
        assert evaluate_quantum_cost(AndOrTree(1, (4,), GATE_OR)) == 2
        assert evaluate_quantum_cost(AndOrTree(1, (9,), GATE_AND)) == 3

    def test_two_level_goldens(self):
        golden = {9: 60000, 27: 150000, 81: 240000}
        for n, q in golden.items():
            assert evaluate_quantum_cost(AndOrTree(2, (n, n), GATE_OR)) == q

    def test_two_level_sqrt_bound(self):
        ratios = [
            evaluate_quantum_cost(AndOrTree(2, (n, n), GATE_OR)) / n
            for n in (9, 27, 81)
        ]
        assert max(ratios) <= 60000 / 9 + 1e-9

    def test_depth_growth_geometric(self):
        qs = [
            evaluate_quantum_cost(AndOrTree(d, fans, GATE_OR))
            for d, fans in ((1, (729,)), (2, (27, 27)), (3, (9, 9, 9)))
        ]
        ratios = [qs[i + 1] / qs[i] for i in range(2)]
        assert all(r >= 2 for r in ratios)


class TestTreeFiles:
    def test_round_trip(self):
        tree = AndOrTree(2, (3, 3), GATE_OR)
        bits = [0, 1, 0, 0, 0, 0, 1, 1, 0]
        parsed_tree, parsed_bits = parse_tree(dump_tree(tree, bits))
        assert parsed_tree == tree and parsed_bits == bits

    def test_comments_and_blanks(self):
        text = "# header\n\ndepth 1\nroot AND\nfanouts 2\n# trailing\nleaves 10\n"
        tree, bits = parse_tree(text)
        assert tree == AndOrTree(1, (2,), GATE_AND)
        assert bits == [1, 0]

    def test_depth_zero_file(self):
        tree, bits = parse_tree("depth 0\nroot OR\nleaves 1\n")
        assert tree.depth == 0 and bits == [1]

    def test_load_from_disk(self, tmp_path):
        path = tmp_path / "tree.txt"
        tree = AndOrTree(2, (2, 3), GATE_AND)
        bits = [1, 0, 1, 1, 1, 1]
        path.write_text(dump_tree(tree, bits))
        assert load_tree(path) == (tree, bits)

    @pytest.mark.parametrize(
        "text",
        [
            "root OR\nleaves 1\n",                      # missing depth
            "depth 1\nroot OR\nleaves 10\n",            # missing fanouts
            "depth 1\nroot XOR\nfanouts 2\nleaves 10\n",  # bad gate
            "depth 1\nroot OR\nfanouts 2\nleaves 1\n",  # wrong length
            "depth 1\nroot OR\nfanouts 2\nleaves ab\n",  # not a bitstring
            "depth x\nroot OR\nleaves 1\n",             # bad integer
            "depth 0\nroot OR\nleaves 1\ndepth 0\n",    # duplicate field
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_tree(text)

    def test_tree_validation(self):
        with pytest.raises(ValueError):
            AndOrTree(2, (3,), GATE_OR)
        with pytest.raises(ValueError):
            AndOrTree(1, (0,), GATE_OR)
        with pytest.raises(ValueError):
            AndOrTree(-1, (), GATE_OR)
