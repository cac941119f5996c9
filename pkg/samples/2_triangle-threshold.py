"""Пример 2: порог сертификации подлинной многосторонней нелокальности для треугольной сети.
Пропускная способность минимального разреза треугольника равна 2, поэтому для кубитов сетевая
доля запутанности должна превысить `2^(-2) = 1/4`, то есть изотропные рёбра должны иметь
точность больше `2^(-2/3) ≈ 0.63`.
"""

import logging

import numpy as np

from tabulate import tabulate

from gmnl_net import NetworkGraph, certify_network_state
from gmnl_net.games import (
    Behavior,
    certify_cut_bound, chsh, network_game, optimal_biproduct_behavior, pr_box, product_behavior,
)
from gmnl_net.quantum import isotropic_network_state

logging.basicConfig(level=logging.WARNING)

triangle = NetworkGraph.complete(3)

# Перебираем точность рёбер вокруг порога. Вердикт определяется строгим неравенством, поэтому
# значение, попадающее точно на порог, не сертифицируется
table = []
for F in np.linspace(0.60, 0.66, 7):
    certificate = certify_network_state(*isotropic_network_state(triangle, F))
    table.append([f'{F:.3f}', f'{certificate.F_gamma:.5f}', f'{certificate.margin:+.5f}',
                  certificate.verdict])
print(tabulate(table, headers=('F', 'F_gamma', 'margin', 'verdict')))

# Тот же критерий на уровне игр: смесь PR-ящиков с оптимальной бисепарабельной моделью. Счёт
# сравнивается с локальной границей 2-кратного повторения CHSH (5/8)
ng = network_game(chsh(), triangle)
biproduct = optimal_biproduct_behavior(ng, [0])
pr_product = product_behavior(ng, pr_box())
table = []
for t in (0, 0.005, 1 / 75, 0.02, 0.05):
    behavior = Behavior.mixture([pr_product, biproduct], [t, 1 - t])
    verdict = certify_cut_bound(ng, behavior)
    table.append([f'{t:.4f}', f'{verdict.score:.5f}', str(verdict.threshold),
                  'certified' if verdict.certified else 'not-certified'])
print()
print(tabulate(table, headers=('PR weight', 'score', 'bound', 'verdict')))
