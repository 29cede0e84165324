import pytest

from groupresample import make_cyclic, make_dihedral

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def groups_up_to(max_order: int):
    out = [make_cyclic(n) for n in range(1, max_order + 1)]
    out += [make_dihedral(n) for n in range(1, max_order // 2 + 1)]
    return out


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


@pytest.fixture(scope="session")
def small_groups():
    return groups_up_to(24)
