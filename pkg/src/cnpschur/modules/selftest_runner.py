"""SELFTEST RUNNER.

This module defines the runner of the ``selftest`` command, which runs the
randomized identity suite at the configured seed.

:Author: CNPSchur developers

"""

from cnpschur.modules.module_decorator import module_runner
from cnpschur.modules.selftest_package import identity_suite
from cnpschur.pipeline.job_handler import JobHandler
from cnpschur.utilities.multiplier_expr import SCHEMA_VERSION


@module_runner(
    version='1.0',
    depends=['numpy', 'scipy', 'joblib'],
    run_method='parallel',
)
def selftest_runner(args, run_config, log):
    """Define The Selftest Runner."""
    jobs = identity_suite.build_jobs(
        run_config.seed,
        run_config.samples,
        run_config.radius_cap,
    )

    job_handler = JobHandler(
        jobs,
        log,
        batch_size=run_config.batch_size,
        backend=run_config.backend,
        verbose=run_config.verbose,
    )
    worker_dicts = job_handler.submit_jobs()

    identities = identity_suite.summarise(worker_dicts, run_config.radius_cap)
    passed = all(entry['passed'] for entry in identities.values())

    for name, entry in identities.items():
        if not entry['passed']:
            log.info(f' - Identity {name} failed: {entry}')

    doc = {
        'schema_version': SCHEMA_VERSION,
        'seed': run_config.seed,
        'samples': run_config.samples,
        'radius_cap': run_config.radius_cap,
        'identities': identities,
        'passed': passed,
    }

    return {'report': doc}, 0 if passed else 3
