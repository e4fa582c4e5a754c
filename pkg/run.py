"""
Launcher script for polycover
Solves import issues and provides easy-to-use entry points
"""

import sys
from pathlib import Path

# Add src to path to import modules
current_dir = Path(__file__).parent
src_path = current_dir / "src"
sys.path.insert(0, str(src_path))


def run_cli(args=None):
    """Run CLI interface"""
    from cli import app

    app(args=args)


def run_replay():
    """Replay every appendix procedure against its golden file"""
    run_cli(["replay"])


if __name__ == "__main__":
    if len(sys.argv) == 1:
        print("🔷 polycover")
        print("\nUsage:")
        print("  python run.py cli <command> [options]  - Run CLI interface")
        print("  python run.py replay                   - Replay the appendix procedures")
    elif sys.argv[1] == "cli":
        run_cli(sys.argv[2:])
    elif sys.argv[1] == "replay":
        run_replay()
    else:
        print("Invalid command. Use: cli or replay")
