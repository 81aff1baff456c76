"""Drive the command-line interface end to end through a subprocess.

Shows the verbs, the JSON wire formats, and the exit-code contract exactly
as a shell user would see them.
"""

import json
import subprocess
import sys

BALL = '{"type":"ball","center":{"coeffs":[0,0]},"radius":1}'
CONE = '{"type":"positive_cone","dim":2}'


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "hilproj", *args], capture_output=True, text=True
    )
    shown = " ".join(a if len(a) < 40 else a[:37] + "..." for a in args)
    print(f"$ hilproj {shown}")
    if proc.stdout:
        print(json.dumps(json.loads(proc.stdout), indent=2))
    if proc.stderr:
        print(f"  (stderr) {proc.stderr.strip()}")
    print(f"  exit code: {proc.returncode}")
    print()
    return proc


def main():
    run("project", "--set", BALL, "--point", '{"coeffs":[2,0]}')
    run("classify", "--set", BALL, "--point", '{"coeffs":[1,0]}',
        "--direction", '{"coeffs":[0,1]}')
    run("derive", "--set", BALL, "--point", '{"coeffs":[2,0]}',
        "--direction", '{"coeffs":[0,1]}', "--oracle")
    run("derive", "--set", CONE, "--point", '{"coeffs":[1,0]}',
        "--direction", '{"coeffs":[0,-1]}')
    run("inverse-check", "--set", BALL, "--member", '{"coeffs":[1,0]}',
        "--point", '{"coeffs":[3,0]}')
    run("verify", "--set", CONE, "--trials", "200", "--seed", "7")
    run("project", "--set", BALL, "--point", "{oops")


if __name__ == "__main__":
    main()
