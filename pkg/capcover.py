"""
Spouštěcí skript příkazové řádky capcover.

Příklad:
    python capcover.py approximate --body ball.json --eps 0.05 --out out/
"""

from app.cli import capcover

if __name__ == '__main__':
    capcover()
