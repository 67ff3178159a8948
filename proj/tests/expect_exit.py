"""Usage: expect_exit.py CODE REGEX CMD...; passes when CMD exits with CODE and prints REGEX."""

import re
import subprocess
import sys

code, pattern, cmd = int(sys.argv[1]), sys.argv[2], sys.argv[3:]
proc = subprocess.run(cmd, capture_output=True, text=True)
out = proc.stdout + proc.stderr
print(out, end="")
if proc.returncode != code:
    print(f"exit {proc.returncode}, expected {code}")
    sys.exit(1)
if not re.search(pattern, out):
    print(f"output does not match {pattern!r}")
    sys.exit(1)
