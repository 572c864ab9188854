#!/usr/bin/env python3
"""
LÓGICA CONDICIONAL E ENTAILMENT PROBABILÍSTICO

Arquivo principal do projeto: encaminha para a interface de linha de
comando (check, query, compare, laws).

Exemplos:
    python main.py check bases/penguin.kb
    python main.py query bases/penguin.kb "P(f | b & p)" --exact
    python main.py compare bases/birds.kb "P(f | b)" p --plot
"""

import os
import sys

# Raiz do projeto no path para importar o pacote src
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def main():
    """Função principal - delega para src.cli"""
    try:
        from src.cli import main as cli_main
    except ImportError as e:
        print(f"❌ Erro ao importar módulos: {e}")
        print("Execute: pip install -r requirements.txt")
        return 1
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
