import requests
from pathlib import Path


def send(token, records):
    resp = requests.post('https://api.example.com/v1/ingest', headers={'X-Auth': token}, data=records)
    Path('out/receipt.json').write_text(resp.text)
