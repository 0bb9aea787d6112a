from upcut.fixture import FIXTURES, run_fixtures


def test_all_fixtures_pass():
    messages = []

    def logger(message, *args):
        messages.append(message.format(*args))

    results = run_fixtures(logger)
    assert len(results) == len(FIXTURES)
    for result in results:
        failed = [c['name'] for c in result['checks'] if not c['passed']]
        assert result['passed'], f'{result["name"]}: {failed}'
    assert any(m.startswith('✅ restriction') for m in messages)


def test_checks_state_provenance():
    for result in run_fixtures():
        assert result['checks']
        for check in result['checks']:
            assert check['provenance'] in ('published', 'derived')
