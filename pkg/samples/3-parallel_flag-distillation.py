"""Пример 3: протокол дистилляции с флагами для звезды из `M` рёбер, версия с параллельным расчётом.
Для каждого числа рёбер определяется число копий состояния `σ*`, достаточное для того, чтобы
каждое ребро получило запутанную пару с вероятностью не меньше `p`; точная вероятность
сравнивается с частотой, полученной моделированием протокола. После дистилляции рёбра звезды
проверяются критерием `Π F_i > 1/d`.

Как и в других параллельных примерах, в Windows из интерактивного режима (Jupyter Notebook)
пример работать не будет: функция, исполняемая в дочернем процессе, должна лежать в файле на диске.
"""

import logging
import multiprocessing

from tabulate import tabulate

from gmnl_net import certify_star
from gmnl_net.quantum import (
    copies_for_success, coupon_collector_prob, coverage_frequency, entangled_link_probability,
    entanglement_fraction, extract_link_state, isotropic, sigma_star, sigma_star_assignment,
)

logging.basicConfig(level=logging.INFO)

TARGET_PROBABILITY = 0.9
TRIALS = 100000


def distill(M, F, seed):
    copies = copies_for_success(M, TARGET_PROBABILITY)
    coverage = coverage_frequency(M, copies, TRIALS, seed)
    # Размерность σ* растёт как (d+1)^(2M), поэтому состояние строится только для малых M
    if M == 1:
        flag_probability = 1.0
        link_fraction = entanglement_fraction(isotropic(F, 2))
    elif M <= 3:
        rho = sigma_star([isotropic(F, 2)] * M)
        assignment = sigma_star_assignment(M, 2)
        sys_a, sys_b, _ = assignment.mapping[(0, 1)]
        flag_probability = entangled_link_probability(rho, sys_a, sys_b)
        link_fraction = entanglement_fraction(extract_link_state(rho, sys_a, sys_b))
    else:
        flag_probability, link_fraction = 1 / M, F
    certificate = certify_star([link_fraction] * M, 2)
    return (M, copies, coupon_collector_prob(M, copies), coverage.frequency, coverage.std_error,
            flag_probability, certificate.F_gamma, certificate.verdict)


def main():
    F = 0.8
    pool = multiprocessing.Pool()
    results = pool.starmap_async(distill, [(M, F, 20240917 + M) for M in range(1, 7)])
    pool.close()
    pool.join()

    table = [
        [M, copies, f'{exact:.4f}', f'{frequency:.4f}±{std_error:.4f}', f'{flag:.3f}',
         f'{F_gamma:.4f}', verdict]
        for M, copies, exact, frequency, std_error, flag, F_gamma, verdict in results.get()
    ]
    print(tabulate(table, headers=('M', 'copies', 'P(cover)', 'frequency', 'flag prob.',
                                   'F_gamma', 'verdict')))


if __name__ == '__main__':
    main()
