import io
import shlex
from typing import List

import cmd2

from sumfree_explorer.commands import COMMANDS, EXIT_OK, dispatch
from sumfree_explorer.config import UsageError, parse_config


class SumFreeXShell(cmd2.Cmd):
    intro = (
        'Welcome to the sum-free explorer!\n'
        'Type <command> <arguments> to run a command, e.g. ‘derive 17’.\n'
        'Type ‘help’ for all commands.\n'
    )
    prompt = '[sumfree-explorer] # '

    def __init__(self):
        super().__init__()

        self.seed = 0
        self.add_settable(cmd2.Settable(
            'seed', int, 'seed used when a command gets no --seed', self
        ))

    def _arguments(self, command: str, args: str) -> List[str]:
        arguments = [command] + shlex.split(args)
        if '--seed' not in arguments:
            arguments += ['--seed', str(self.seed)]
        return arguments

    def run_command(self, command: str, args: str) -> int:
        """Run one subcommand with the shell's settings; return its exit
        code."""
        try:
            config = parse_config(self._arguments(command, args))
        except (UsageError, ValueError) as err:
            self.perror(f'UsageError: {err}')
            return 1
        except SystemExit:
            # argparse exits after printing --help
            return EXIT_OK
        out, err = io.StringIO(), io.StringIO()
        code = dispatch(config, out, err, tty=True)
        if out.getvalue():
            self.poutput(out.getvalue().rstrip('\n'))
        if err.getvalue():
            self.perror(err.getvalue().rstrip('\n'))
        if code != EXIT_OK:
            self.pfeedback(f'{command} finished with exit code {code}')
        return code

    def default(self, statement: cmd2.Statement) -> None:
        """Commands with a hyphen, such as ``check-subspace``."""
        if statement.command in COMMANDS:
            self.run_command(statement.command, statement.args)
        else:
            super().default(statement)

    def do_theta(self, args) -> None:
        '''Theta_k: number of terms, degree and partitions (--dump for the
        monomials).'''
        self.run_command('theta', args)

    def do_partitions(self, args) -> None:
        '''The 2-adic partitions of 2^(k-1) with at most k parts.'''
        self.run_command('partitions', args)

    def do_check_subspace(self, args) -> None:
        '''Check a basis from a matrix file with all three criteria.'''
        self.run_command('check-subspace', args)

    def do_search(self, args) -> None:
        '''Search for a k-dimensional zero-sum subspace of GF(2^n).'''
        self.run_command('search', args)

    def do_census(self, args) -> None:
        '''Count the zeros of F_k or Theta_k over GF(2^n)^k.'''
        self.run_command('census', args)

    def do_zk(self, args) -> None:
        '''Count the k-dimensional zero-sum subspaces of GF(2^n).'''
        self.run_command('zk', args)

    def do_sf_table(self, args) -> None:
        '''Certify SF_n for small n.'''
        self.run_command('sf-table', args)

    def do_derive(self, args) -> None:
        '''Derive the K_n / SF_n status of every order.'''
        self.run_command('derive', args)

    def do_thresholds(self, args) -> None:
        '''Field sizes above which k is in K_n.'''
        self.run_command('thresholds', args)

    def do_verify_paper_examples(self, args) -> None:
        '''Re-check the shipped examples for n = 17 and n = 19.'''
        self.run_command('verify-paper-examples', args)

    def do_trend(self, args) -> None:
        '''Censuses over GF(2^m) for m_min <= m <= m_max.'''
        self.run_command('trend', args)

    def do_modulus(self, args) -> None:
        '''The default modulus for GF(2^n).'''
        self.run_command('modulus', args)
