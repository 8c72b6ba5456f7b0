"""
Test runner for alphalab.

    python run_tests.py [unit|integration|e2e|fast|all]

``fast`` runs everything except tests marked ``slow``.
"""

import subprocess
import sys
from pathlib import Path


def run_tests(test_type: str = "all") -> int:
    """Run tests based on type."""
    test_dir = Path(__file__).parent / "tests"
    extra: list[str] = []

    if test_type == "unit":
        test_path = test_dir / "unit"
        print("Running unit tests...")
    elif test_type == "integration":
        test_path = test_dir / "integration"
        print("Running integration tests...")
    elif test_type == "e2e":
        test_path = test_dir / "e2e"
        print("Running end-to-end tests...")
    elif test_type == "fast":
        test_path = test_dir
        extra = ["-m", "not slow"]
        print("Running all tests except slow ones...")
    else:
        test_path = test_dir
        print("Running all tests...")

    result = subprocess.run(
        [sys.executable, "-m", "pytest", str(test_path), "-v", *extra], cwd=Path(__file__).parent
    )
    return result.returncode


def main() -> None:
    test_type = sys.argv[1] if len(sys.argv) > 1 else "all"
    print("alphalab test runner")
    print("=" * 40)

    exit_code = run_tests(test_type)

    if exit_code == 0:
        print("\nAll tests passed!")
    else:
        print("\nSome tests failed!")

    sys.exit(exit_code)


if __name__ == "__main__":
    main()
