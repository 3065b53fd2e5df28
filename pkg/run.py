#!/usr/bin/env python3
"""
Script para ejecutar la CLI de amoeba
"""
import sys

from amoeba import get_cli


def main():
    """Función principal"""
    if len(sys.argv) < 2:
        print("Uso: python run.py [classify|replacements|construct|morph|replay|census] ...")
        print("  classify: veredictos de ameba local y global")
        print("  replacements: reemplazos de aristas factibles")
        print("  construct: familias path, cycle, hn, fib, compose, power")
        print("  morph / replay: cadenas de reemplazos entre copias")
        print("  census: clasificación por lotes de un flujo graph6")
        return 2
    return get_cli()(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
