"""The ten acceptance criteria, each at its stated weight bound.

Every criterion prints one ``[PASS]``/``[FAIL]`` line, also when pytest
captures output.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from preprojective.acceptance import CHECKS, PASS, run_check

IDS = [cid for cid, *_ in CHECKS]


@pytest.mark.parametrize("cid", IDS, ids=[f"criterion_{k:02d}" for k in IDS])
def test_criterion(cid, capsys):
    r = run_check(cid)
    with capsys.disabled():
        print(f"\n{r.line()}")
    assert r.status == PASS, r.details


def main():
    bad = 0
    for cid in IDS:
        r = run_check(cid)
        print(r.line(), flush=True)
        bad += r.status != PASS
    print(f"{len(IDS) - bad}/{len(IDS)} criteria pass")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
