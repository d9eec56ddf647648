"""
Run an external theorem prover on an emitted problem and read its verdict.
"""

import logging
import subprocess
import tempfile
from pathlib import Path
from typing import Optional

from src.config import AtpConfig, ConfigError
from src.szs import SzsResult, SzsStatus, parse_szs
from src.tptp import ThfProblem, emit

logger = logging.getLogger(__name__)


def dispatch(problem: ThfProblem, config: AtpConfig, tag: str = 'problem',
             workdir: Optional[str] = None) -> SzsResult:
    """
    Write `problem` to a `.p` file, run the configured prover on it and
    SZS-parse its output.

    Args:
        problem: Problem to send
        config: Prover settings; `{problem}` in args becomes the file path
        tag: Problem name used for the file and the fallback result
        workdir: Directory for the problem file, kept afterwards; by default a
            temporary directory removed once the prover returns

    Returns:
        The first recognised result, or Timeout/Unknown when the prover is
        killed or prints nothing recognisable

    Raises:
        ConfigError: If no executable is configured or it cannot be started
    """
    if not config.executable:
        raise ConfigError("no ATP executable configured (set atp.executable)")
    if workdir:
        return _run_in(Path(workdir), problem, config, tag)
    with tempfile.TemporaryDirectory(prefix='cobordism_atp_') as scratch:
        return _run_in(Path(scratch), problem, config, tag)


def _run_in(directory: Path, problem: ThfProblem, config: AtpConfig, tag: str) -> SzsResult:
    directory.mkdir(parents=True, exist_ok=True)
    problem_path = directory / f"{tag}.p"
    problem_path.write_text(emit(problem))

    command = [config.executable] + [arg.replace('{problem}', str(problem_path))
                                     for arg in config.args]
    logger.info("Running %s", ' '.join(command))
    try:
        completed = subprocess.run(command, capture_output=True, text=True,
                                   timeout=config.timeout)
    except subprocess.TimeoutExpired:
        logger.warning("%s timed out after %ds", config.prover_name, config.timeout)
        return SzsResult(tag, config.prover_name, SzsStatus.TIMEOUT,
                         wallclock=float(config.timeout))
    except OSError as exc:
        raise ConfigError(f"cannot run {config.executable}: {exc}")
    if completed.returncode != 0:
        logger.warning("%s exited with code %d", config.prover_name, completed.returncode)

    results = parse_szs(completed.stdout)
    if not results:
        return SzsResult(tag, config.prover_name, SzsStatus.UNKNOWN)
    result = results[0]
    if not result.prover:
        result.prover = config.prover_name
    return result
