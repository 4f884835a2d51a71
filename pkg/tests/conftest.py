import pytest

from defring import Ideal, VarContext

A_R = ["A^2 + B*C", "F^2 + 4*X*Y", "A*F + 2*C*X", "A*F + 2*B*Y", "2*A*X - B*F", "2*A*Y - C*F"]
TAU_ZETA = ["A'^2 + 4*B*C + 3", "B*Y - X*C", "A'*X - B*F", "A'*Y - C*F"]

_ACCEPTANCE = []


def record_acceptance(number, title, passed):
    _ACCEPTANCE.append((number, title, passed))


@pytest.fixture
def lex_xyabcf():
    return VarContext("X,Y,A,B,C,F", 3, "lex")


@pytest.fixture
def a_r(lex_xyabcf):
    return Ideal.parse(A_R, lex_xyabcf)


@pytest.fixture
def tau_zeta_ctx():
    return VarContext("F,A',B,C,X,Y", 3, "lex")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}")
