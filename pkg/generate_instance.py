"""
Standalone script to generate a seeded random instance file.

Usage:
    python generate_instance.py --dim 2 --families 2 --per-family 3 --seed 7
    python generate_instance.py --dim 3 --families 3 --per-family 5 --seed 1 -o data/instances/random_3d.json
    python generate_instance.py --kind points --dim 2 --families 2 --per-family 7 -o data/instances/points_2d.json
"""

from src.utils.generator import main

if __name__ == "__main__":
    main()
