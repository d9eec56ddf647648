"""
Unit tests for web API endpoints.
"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.append(str(Path(__file__).parent.parent))

try:
    from fastapi.testclient import TestClient
    from web.api import app
    FASTAPI_AVAILABLE = True
except ImportError:
    FASTAPI_AVAILABLE = False


@unittest.skipIf(not FASTAPI_AVAILABLE, "FastAPI not installed")
class TestAPIEndpoints(unittest.TestCase):
    """Test cases for API endpoints."""

    def setUp(self):
        """Set up test client."""
        self.client = TestClient(app)

    def test_get_defaults(self):
        """Test GET /api/defaults endpoint."""
        response = self.client.get("/api/defaults")
        self.assertEqual(response.status_code, 200)

        data = response.json()
        self.assertIn('frobenius', data['presets'])
        self.assertEqual(data['models'], ['khovanov', 'lee'])
        self.assertIn('frobenius.assoc.A', data['rules'])

    def test_check(self):
        """Test POST /api/check with a well-typed term."""
        response = self.client.post("/api/check", json={"term": "mu[A] ; delta[A]"})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {"dom": "A*A", "cod": "A*A"})

    def test_check_ill_typed(self):
        """Test POST /api/check with a boundary mismatch."""
        response = self.client.post("/api/check", json={"term": "mu[A] ; mu[A]"})
        self.assertEqual(response.status_code, 400)

    def test_check_validation(self):
        """Test that an empty term fails validation."""
        response = self.client.post("/api/check", json={"term": ""})
        self.assertEqual(response.status_code, 422)  # Validation error

    def test_evaluate(self):
        """Test POST /api/evaluate in the Khovanov model."""
        response = self.client.post("/api/evaluate",
                                    json={"term": "delta[A] ; mu[A]", "model": "khovanov"})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()['matrix'], [["0", "0"], ["2", "0"]])

    def test_evaluate_unknown_model(self):
        """Test that only registry models are accepted."""
        response = self.client.post("/api/evaluate",
                                    json={"term": "mu[A]", "model": "/etc/passwd"})
        self.assertEqual(response.status_code, 400)

    def test_prove(self):
        """Test POST /api/prove finds associativity."""
        response = self.client.post("/api/prove", json={"equation": "assoc@A"})
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertTrue(data['proved'])
        self.assertEqual(data['steps'][0]['rule'], 'frobenius.assoc.A')

    def test_prove_exhausted(self):
        """Test POST /api/prove with a false equation and a small budget."""
        payload = {"equation": "mu[A] ; delta[A] = id[A*A]", "max_states": 40}
        response = self.client.post("/api/prove", json=payload)
        self.assertEqual(response.status_code, 200)
        self.assertFalse(response.json()['proved'])

    def test_prove_validation(self):
        """Test that the state budget is bounded."""
        payload = {"equation": "assoc@A", "max_states": 0}
        response = self.client.post("/api/prove", json=payload)
        self.assertEqual(response.status_code, 422)  # Validation error

    def test_oracle(self):
        """Test POST /api/oracle on a true and a false equation."""
        response = self.client.post("/api/oracle", json={"equation": "frobenius@A"})
        self.assertTrue(response.json()['equal'])
        response = self.client.post("/api/oracle", json={"equation": "mu[A] ; delta[A] = id[A*A]"})
        self.assertFalse(response.json()['equal'])

    def test_tptp(self):
        """Test POST /api/tptp with one axiom."""
        payload = {"equation": "frobenius@A", "axioms": ["frobenius.assoc.A"]}
        response = self.client.post("/api/tptp", json=payload)
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertIn("thf(frobenius_assoc_A,axiom,", data['problem'])
        self.assertEqual(data['formulas'], 9)

    def test_tptp_unencodable(self):
        """Test POST /api/tptp with object variables."""
        response = self.client.post("/api/tptp", json={"equation": "pentagon"})
        self.assertEqual(response.status_code, 400)

    def test_khovanov(self):
        """Test POST /api/khovanov with a built-in table."""
        response = self.client.post("/api/khovanov", json={"table": "bar-natan"})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()['polynomial'], 'A^2 + A^4 + t^2*A^8 + t^2*A^12')

    def test_khovanov_states(self):
        """Test POST /api/khovanov with explicit states."""
        payload = {"states": [{"r": 1, "k": 3, "rank": 2}]}
        response = self.client.post("/api/khovanov", json=payload)
        self.assertEqual(response.json()['polynomial'], '2*t*A^3')

    def test_khovanov_duplicate_states(self):
        """Test that duplicate states fail validation."""
        payload = {"states": [{"r": 0, "k": 2, "rank": 1}, {"r": 0, "k": 2, "rank": 1}]}
        response = self.client.post("/api/khovanov", json=payload)
        self.assertEqual(response.status_code, 422)  # Validation error

    def test_khovanov_unknown_table(self):
        """Test that table files cannot be named."""
        response = self.client.post("/api/khovanov", json={"table": "config/tables/khovanov.txt"})
        self.assertEqual(response.status_code, 400)

    def test_braid(self):
        """Test POST /api/braid."""
        response = self.client.post("/api/braid", json={"word": "s1 s2 r3 r3"})
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertEqual(data['reduced'], 's1 s2')
        self.assertEqual(data['n'], 4)

    def test_braid_bad_word(self):
        """Test POST /api/braid with a malformed word."""
        response = self.client.post("/api/braid", json={"word": "q1"})
        self.assertEqual(response.status_code, 400)


if __name__ == '__main__':
    unittest.main()
