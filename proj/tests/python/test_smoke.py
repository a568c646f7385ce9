import json
import os
import subprocess

import pytest

import twistmap as tm


def test_phi_prime_example():
    out = tm.phi_prime([5, 4, 3, 3, 2, 2, 1, 1])
    assert out.parts == [5, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1]
    assert str(tm.phi_prime("2,2")) == "1,1,1,1"


def test_partition_basics():
    p = tm.Partition([3, 1])
    assert p.dual() == tm.Partition([2, 1, 1])
    assert len(p) == 2 and p.total() == 4
    assert tm.dominance_le([2, 2], [3, 1])
    assert len(tm.partitions_of(5)) == 7
    with pytest.raises(ValueError):
        tm.Partition([1, 2])


def test_psi_prime_sections_phi_prime():
    for n in range(1, 6):
        for gamma in tm.partitions_of(n):
            if not tm.fiber_phi_prime(gamma):
                continue
            lam, mu = tm.psi_prime(gamma)
            assert tm.phi_prime(lam) == gamma
            assert mu >= 0


def test_elliptic_maps():
    assert tm.phi_char2_elliptic([2, 1]) == "3:1,1:1"
    assert tm.z_perm([2]) == [2, 1, 3]
    for n in range(1, 9):
        for p in tm.model_partitions(n):
            assert tm.length_dimension(p)["holds"]


def test_tables():
    e6 = tm.exceptional_table("e6")
    assert len(e6) == 25
    assert sum(1 for _, _, dist in e6 if dist) == 4
    assert len(tm.exceptional_table("d4")) == 7
    assert tm.table_checksum("d4") == 0x46E00ABD859BC439


def test_oracles():
    assert tm.class_inventory(2, 2) == {"1:1,1:1": 3, "1:0,1:0": 1}
    assert tm.verify_elliptic(2, 2, [1, 2])
    counts = tm.count_unitary_dl(1, 2, [1], 1)
    assert counts["x_tilde"] == 3


def test_acceptance_subset():
    rows = tm.run_acceptance([1, 3, 11])
    assert [r[0] for r in rows] == [1, 3, 11]
    assert all(r[1] for r in rows)


def test_cli_json():
    exe = os.environ.get("TWISTMAP_CLI")
    if not exe:
        pytest.skip("TWISTMAP_CLI not set")
    res = subprocess.run([exe, "--json", "psi-prime", "1,1"], capture_output=True, text=True, check=True)
    data = json.loads(res.stdout)
    assert data["output"] == "1,1"
    assert data["status"] == "ok"
