import logging
import multiprocessing
import os

import numpy as np
import tqdm

from .decompose import quotient_principal, stability_groupoid
from .generators import random_groupoid, random_lambda, \
    random_representatives
from .haar import enumerate_invariant_systems, principal_haar_from_lambda, \
    synthesize_haar, verify_haar
from .measures import uniform_coherent, verify_unique_up_to_scale
from .report import Report

logger = logging.getLogger("groupoid_haar.sweep")


def default_n_cores():
    return min(os.cpu_count() or 1, 4)


def check_instance(index, seed, n_representatives=10):
    """Run every synthesis check on the index-th generated groupoid

    The instance is regenerated from (seed, index) in the worker so only
    small values cross process boundaries.

    :returns: a Report named "instance <index>"
    """
    rng = np.random.RandomState([seed, index])
    G = random_groupoid(rng)
    report = Report("instance %d" % index)
    report.data.update(objects=G.n_objects, arrows=G.n_arrows)
    nu = uniform_coherent(stability_groupoid(G))
    quotient = quotient_principal(G)
    m = principal_haar_from_lambda(quotient, random_lambda(G, rng))
    mu = synthesize_haar(G, nu, m)
    report.extend(verify_haar(G, mu), prefix="haar")
    table = mu.table()
    for _ in range(n_representatives):
        again = synthesize_haar(G, nu, m,
                                random_representatives(quotient, rng))
        if again.table() != table:
            report.add_violation("representatives",
                                 "weights depend on the representatives",
                                 index)
            break
    for g in quotient.representative.tolist():
        report.extend(verify_unique_up_to_scale(G, nu, g), prefix="unique")
    space = enumerate_invariant_systems(G)
    if not space.contains(mu):
        report.add_violation("oracle", "synthesized system does not solve "
                             "the invariance equations", index)
    report.data.update(dimension=space.dimension)
    return report


def run_sweep(count, seed=1234, n_cores=None, silent=False,
              n_representatives=10):
    """Check count generated instances, in parallel

    :param count: the number of instances
    :param seed: the seed of the family
    :param n_cores: worker processes, 1 to run in this process
    :param silent: disable the progress bar
    :returns: a Report with one "<index>."-prefixed entry per failure
    """
    if n_cores is None:
        n_cores = default_n_cores()
    report = Report("haar_sweep")
    if n_cores <= 1:
        results = [check_instance(i, seed, n_representatives)
                   for i in tqdm.tqdm(range(count), disable=silent)]
    else:
        with multiprocessing.Pool(n_cores) as pool:
            futures = []
            for i in range(count):
                futures.append(pool.apply_async(
                    check_instance, (i, seed, n_representatives)))
            results = [future.get()
                       for future in tqdm.tqdm(futures, disable=silent)]
    n_failed = 0
    for i, result in enumerate(results):
        if not result.ok:
            n_failed += 1
        report.extend(result, prefix=str(i))
    report.notes = sorted(set(report.notes))
    report.data.update(instances=count, seed=seed, failed=n_failed,
                       arrows=sum(r.data["arrows"] for r in results))
    logger.info("sweep of %d instances, %d failed", count, n_failed)
    return report
