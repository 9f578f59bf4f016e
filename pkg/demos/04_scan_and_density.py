# Classify a range of n and look at how much gets certified per class mod 8.
from collections import Counter

from cnum.certify import Options, Skip, Status, classify, density_report, scan

v = classify(34)
print(v.n, v.status.value, v.rules)
v = classify(6)
print(v.n, v.status.value, v.rules, "point", v.point)

tally = Counter()
for r in scan(1, 500, Options(point_bound=100)):
    if not isinstance(r, Skip):
        tally[(r.n % 8, r.status.value)] += 1
for key in sorted(tally):
    print(key, tally[key])

# fraction of n = 5 mod 8 where an odd sum forces rank one
report = density_report(20000, 5)
print("n = 5 mod 8, n <= 20000:", round(report.rows[5].fraction(Status.CONGRUENT), 4))
print(report.as_dict()["classes"][0]["by_rule"])
