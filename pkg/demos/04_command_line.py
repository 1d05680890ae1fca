"""
The command line pipeline
=========================

Every subcommand reads the transaction file format, so the fixture pipes
straight into the rest. ``run`` is what the ``rulekit`` script calls.
"""

# %%
import io

from rulekit.cli import run


def rulekit(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue() or err.getvalue()


_, data = rulekit("fixture")
print(data.splitlines()[:3])

# %%
# Equivalent to: rulekit fixture | rulekit rules --min-support 0.1 --format csv
print(rulekit("rules", "--min-support", "0.1", "--format", "csv", stdin=data)[1])

# %%
print(rulekit("recommend", "--top", "3", stdin=data)[1])

# %%
# Malformed input reports the line and exits with status 2.
print(rulekit("validate", stdin="H,N\nH,H\n"))

# %%
print(rulekit("report", "--errata", stdin=data)[1])
