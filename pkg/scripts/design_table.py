#!/usr/bin/env python3
"""Print the detection-SNR design table for a Cs condensate across total mass
and repetition count, including the two anchor configurations."""

import math

from nongauss import experiment


def main():
    m_cs = experiment.CONSTANTS.mass("cs133")
    print(f"{'M_total [kg]':>13} {'atoms':>12} {'chi t N^2':>10} "
          f"{'reps':>8} {'SNR (1st order)':>16}")
    for m_total in (1e-16, 1e-15, 1e-14):
        atoms = experiment.atoms_for_mass(m_total, "cs133")
        scale = experiment.interaction_scale(m_total, 200e-6, 2.0)
        for reps in (10000, 40000, 1000000):
            p = experiment.ExperimentParams(mass=m_cs, atom_count=atoms,
                                            radius=200e-6, time=2.0,
                                            repetitions=reps)
            snr = experiment.design_snr(p, mode="first_order")
            print(f"{m_total:>13.1e} {atoms:>12d} {scale:>10.4f} "
                  f"{reps:>8d} {snr:>16.3f}")

    print("\nnon-perturbative optimum at M = 1e-14 kg, full squeezing:")
    reps = 1000000
    p = experiment.ExperimentParams(mass=m_cs,
                                    atom_count=experiment.atoms_for_mass(1e-14, "cs133"),
                                    radius=200e-6, time=2.0, repetitions=reps)
    snr = experiment.design_snr(p, mode="nonperturbative")
    print(f"  SNR = {snr:.1f}  ({snr / math.sqrt(reps):.4f} per sqrt(repetition))")


if __name__ == "__main__":
    main()
