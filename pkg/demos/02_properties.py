# Which measures respect which intuitions?
#
# Each case says "the first pair should be more similar than the second".
# A positive delta means the measure agrees. The markdown is the same table
# the `properties` command prints.
from deltacon.properties import ALL_CASES, battery_markdown, run_battery

methods = ["dc0", "dc", "veo", "ged", "lambda-adj", "lambda-lap"]
results = {m: run_battery(m, ALL_CASES, seeds=range(10)) for m in methods}
print(battery_markdown(results))

for m in methods:
    bad = sum(not r.passed for r in results[m])
    print(f"{m:11s} violations: {bad}/{len(ALL_CASES)}")
