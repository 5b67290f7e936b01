"""freecalc：入口点.

用法：
    python run.py transform --law free-poisson:t=1 --which S --order 4
    python run.py limit --mode free --law free-poisson:t=1 --n 1,2,4 --order 3
    python run.py verify
"""

from __future__ import annotations

import sys
from pathlib import Path

# 确保项目根目录在 sys.path 中
_project_root = Path(__file__).resolve().parent
if str(_project_root) not in sys.path:
    sys.path.insert(0, str(_project_root))

from src.cli.app import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
