"""Line-oriented structured text with exact rationals written as p/q."""
from .indexsets import SETS, fmt_set
from .poly import fmt_q


class Report:
    def __init__(self, title):
        self.lines = [title]
        self.checks = []

    def add(self, line="", indent=0):
        self.lines.append("  " * indent + line)

    def field(self, key, value, indent=0):
        self.add(f"{key}: {value}", indent)

    def poly(self, p, indent=0):
        if not p:
            self.add("0", indent)
        for m in sorted(p):
            exps = " ".join(f"{fmt_set(SETS[k])}:{e}" for k, e in m)
            self.add(f"{fmt_q(p[m])} {{{exps}}}", indent)

    def matrix(self, name, M, indent=0):
        self.add(f"{name}:", indent)
        for r in M:
            self.add(" ".join(fmt_q(x) for x in r), indent + 1)

    def check(self, name, ok, witness=""):
        self.checks.append((name, ok))
        self.add(f"verify {name} {'PASS' if ok else 'FAIL'}" + (f" {witness}" if witness else ""), 1)

    @property
    def ok(self):
        return all(ok for _, ok in self.checks)

    def text(self):
        return "\n".join(self.lines) + "\n"


def fmt_vec(x):
    return "{" + " ".join(f"{fmt_set(SETS[k])}:{c}" for k, c in sorted(x.items())) + "}"
