export function cellCount(rows: string[][]): number {
  let total: number = 0;
  for (const row of rows) {
    total += row.length;
  }
  return total;
}
