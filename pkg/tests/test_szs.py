"""
Unit tests for szs module.
"""

import unittest

from src.szs import SHORT_TO_LONG, SzsResult, SzsStatus, parse_szs

SAMPLE = """\
% RESULT: SOT_19PD5B - LEO-II---1.6.2 says Theorem - CPU = 0.01 WC = 0.04
% OUTPUT: SOT_19PD5B - LEO-II---1.6.2 says CNFRefutation - CPU = 0.01 WC = 0.04
"""


class TestSzsStatus(unittest.TestCase):
    """Test cases for SzsStatus."""

    def test_short_codes(self):
        """Test that every status has a short code and back."""
        for status in SzsStatus:
            self.assertEqual(SHORT_TO_LONG[status.short], status.value)
            self.assertEqual(SzsStatus.lookup(status.short), status)

    def test_lookup(self):
        """Test lookup by long name and unknown names."""
        self.assertEqual(SzsStatus.lookup('CounterSatisfiable'), SzsStatus.COUNTER_SATISFIABLE)
        self.assertIsNone(SzsStatus.lookup('Proved'))

    def test_is_proved(self):
        """Test which statuses count as proved."""
        self.assertTrue(SzsStatus.THEOREM.is_proved)
        self.assertTrue(SzsStatus.UNSATISFIABLE.is_proved)
        self.assertFalse(SzsStatus.TIMEOUT.is_proved)
        self.assertFalse(SzsStatus.COUNTER_SATISFIABLE.is_proved)


class TestSzsResult(unittest.TestCase):
    """Test cases for SzsResult."""

    def test_negative_time(self):
        """Test that negative times are rejected."""
        with self.assertRaises(ValueError):
            SzsResult('p', 'leo', SzsStatus.THEOREM, cpu=-0.5)
        with self.assertRaises(ValueError):
            SzsResult('p', 'leo', SzsStatus.THEOREM, wallclock=-1.0)

    def test_to_dict(self):
        """Test the JSON form."""
        data = SzsResult('p.p', 'E', SzsStatus.GAVE_UP, cpu=1.5).to_dict()
        self.assertEqual(data['status'], 'GaveUp')
        self.assertEqual(data['cpu'], 1.5)
        self.assertIsNone(data['wallclock'])


class TestParseSzs(unittest.TestCase):
    """Test cases for parse_szs."""

    def test_result_and_output(self):
        """Test a RESULT line followed by its OUTPUT line."""
        results = parse_szs(SAMPLE)
        self.assertEqual(len(results), 1)
        result = results[0]
        self.assertEqual(result.problem, 'SOT_19PD5B')
        self.assertEqual(result.prover, 'LEO-II---1.6.2')
        self.assertEqual(result.status, SzsStatus.THEOREM)
        self.assertEqual(result.cpu, 0.01)
        self.assertEqual(result.wallclock, 0.04)
        self.assertEqual(result.output_form, 'CNFRefutation')

    def test_status_line_and_solved_by(self):
        """Test an SZS status line annotated by SolvedBy."""
        results = parse_szs("% SZS status Theorem for /tmp/SystemOnTPTP12345/SOT_ZN9MIY\n"
                            "% SolvedBy = LEO-II\n")
        self.assertEqual(len(results), 1)
        self.assertEqual(results[0].problem, 'SOT_ZN9MIY')
        self.assertEqual(results[0].solved_by, 'LEO-II')
        self.assertEqual(results[0].prover, 'LEO-II')

    def test_file_name_keeps_extension(self):
        """Test that the problem tag is the base name of the path."""
        results = parse_szs("% SZS status Timeout for problems/frobenius.p\n")
        self.assertEqual(results[0].problem, 'frobenius.p')
        self.assertEqual(results[0].status, SzsStatus.TIMEOUT)

    def test_short_code_and_optional_percent(self):
        """Test a RESULT line without `%` using a short code."""
        results = parse_szs("RESULT: conj7 - E---2.6 says THM\n")
        self.assertEqual(results[0].status, SzsStatus.THEOREM)
        self.assertIsNone(results[0].cpu)

    def test_order_and_noise(self):
        """Test that unrelated lines are ignored and order is kept."""
        output = ("some banner\n"
                  "% RESULT: a - E says Theorem - CPU = 0.1 WC = 0.2\n"
                  "# nothing\n"
                  "% RESULT: b - E says CounterSatisfiable - CPU = 1 WC = 2\n"
                  "% RESULT: c - E says Proved\n")
        results = parse_szs(output)
        self.assertEqual([r.problem for r in results], ['a', 'b'])
        self.assertEqual(results[1].cpu, 1.0)

    def test_output_without_result(self):
        """Test that a lone OUTPUT line adds nothing."""
        self.assertEqual(parse_szs("% OUTPUT: x - E says Proof\n"), [])

    def test_empty(self):
        """Test empty output."""
        self.assertEqual(parse_szs(''), [])


if __name__ == '__main__':
    unittest.main()
